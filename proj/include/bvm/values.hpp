// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bvm/boolean_algebra.hpp"
#include "bvm/formula.hpp"
#include "bvm/workspace.hpp"

namespace bvm {

enum class AtomKind { eq, mem };

// Induced equality and membership values for every ordered pair from a fixed
// list of names, row-major. The list must be closed under taking keys. Rows
// and columns are positions in `names`; `index_of` maps a NameId to its
// position (-1 when not covered). Entries hold atom masks of the workspace
// algebra.
struct PairMatrices {
    const BoolAlg* alg = nullptr;
    std::vector<NameId> names;
    std::vector<std::int32_t> index_of;
    std::size_t n = 0;
    std::vector<std::uint16_t> eq, mem;

    bool covers(NameId x) const {
        return x < index_of.size() && index_of[x] >= 0;
    }
    AtomMask eq_mask(NameId x, NameId y) const {
        return eq[std::size_t(index_of[x]) * n + std::size_t(index_of[y])];
    }
    AtomMask mem_mask(NameId x, NameId y) const {
        return mem[std::size_t(index_of[x]) * n + std::size_t(index_of[y])];
    }
};

// Fills both matrices level by level along the canonical pair order of the
// ranks; every pair only reads pairs of strictly smaller level, so the work
// inside a level is embarrassingly parallel. `parallel` switches the OpenMP
// team on; the serial fill is the reference the tests compare against.
PairMatrices compute_pair_matrices(Workspace& ws, const std::vector<NameId>& names,
                                   bool parallel);

struct FoResult {
    BoolElem value;      // at the bound stratum
    BoolElem next_value; // one stratum higher
    unsigned bound_stratum = 0;
    bool stable = false; // value == next_value
};

// Value computations over one workspace. Results are memoized only for names
// that existed when the context was created (or at the last refresh_floor),
// so suites may mark/release scratch names on the pool without poisoning the
// cache; values for scratch names are recomputed through the cached floor.
class ValueCtx {
public:
    explicit ValueCtx(Workspace& ws);

    Workspace& workspace() { return m_ws; }

    // Raw values: equality is identity, membership reads the entry.
    BoolElem value_star_atomic(AtomKind k, NameId x, NameId y) const;
    // Induced values, by recursion along the canonical pair order.
    BoolElem value_atomic(AtomKind k, NameId x, NameId y);

    // Quantifier-free sentence values. The starred form interprets atoms by
    // the raw values and no predicates; the induced form interprets atoms by
    // the induced values and G(t) by value_G.
    BoolElem value_star(const Formula& f);
    BoolElem value_qf(const Formula& f);

    // Stratified value: quantifiers range over names of rank <= alpha.
    // Name constants in `f` must have rank <= alpha.
    BoolElem value_alpha(const Formula& f, unsigned alpha);

    // Stratified value plus the stability probe one stratum up.
    FoResult value_fo(const Formula& f, unsigned alpha);

    // Value of the generic predicate at a name: the sum over the algebra of
    // ||a = check(encode(b))|| * b.
    BoolElem value_G(NameId a);

    // i_G: the set of interpreted keys whose entry lies in the ultrafilter.
    HfId interpret(const Ultrafilter& g, NameId x);

    // Algebra elements as ground sets: an element is encoded as the set of
    // numerals of its atoms. Available while the algebra has at most
    // `max_encoded_atoms` atoms.
    static constexpr std::size_t max_encoded_atoms = 6;
    HfId encode_elem(BoolElem b);
    std::optional<AtomMask> decode_elem(HfId x) const;
    NameId check_of_elem(BoolElem b) const;

    // The image name for one replacement instance: domain is the whole
    // stratum beta, and each candidate image a gets the value
    //   sum over x in dom(big_x) of ||phi[var_x:=x, var_y:=a]||_beta * ||x in big_x||.
    NameId replacement_image_name(const FormulaPtr& phi, const std::string& var_x,
                                  const std::string& var_y, NameId big_x, unsigned beta);

    // Route atomic lookups through precomputed matrices where they cover the
    // pair. The matrices must outlive the context.
    void attach_matrices(const PairMatrices* pm) { m_pm = pm; }

    // Extends the memo floor to the current pool size. Only call when every
    // name below the new floor is permanent for the life of this context.
    void refresh_floor();

private:
    BoolElem qf_value(const Formula& f, bool star);
    AtomMask atomic_mask(AtomKind k, NameId x, NameId y);

    Workspace& m_ws;
    const PairMatrices* m_pm = nullptr;
    std::size_t m_floor = 0;
    std::unordered_map<std::uint64_t, AtomMask> m_eq, m_mem;
    std::unordered_map<std::uint64_t, HfId> m_interp;
    std::vector<HfId> m_numerals;      // numeral(i) for each atom index
    std::vector<NameId> m_elem_checks; // by mask; empty when atoms > max_encoded_atoms
};

// Names mentioned by the formula, in syntax order with duplicates.
std::vector<NameId> name_constants(const Formula& f);

} // namespace bvm
