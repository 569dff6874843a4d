// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bvm/error.hpp"

namespace bvm {

// Finite powerset algebra over a list of named atoms. Elements are bitmasks
// over the atom set; joins/meets/complements are the bitwise operations, and
// arbitrary sums/products exist because the algebra is finite (so it is
// trivially complete). Atom order is the declaration order and is part of the
// canonical element syntax "[p q]".
using AtomMask = std::uint32_t;

class BoolAlg {
public:
    static constexpr std::size_t max_atoms = 16;

    explicit BoolAlg(std::vector<std::string> atom_labels);

    std::size_t atom_count() const { return m_atoms.size(); }
    const std::vector<std::string>& atom_labels() const { return m_atoms; }
    AtomMask full_mask() const { return m_full; }

    // Index of a label, or -1 when the label is not an atom of this algebra.
    int atom_index(const std::string& label) const;

private:
    std::vector<std::string> m_atoms;
    AtomMask m_full = 0;
};

std::shared_ptr<const BoolAlg> mk_powerset_algebra(std::vector<std::string> atom_labels);

struct BoolElem {
    const BoolAlg* alg = nullptr;
    AtomMask mask = 0;

    bool is_zero() const { return mask == 0; }
    bool is_one() const { return alg != nullptr && mask == alg->full_mask(); }

    friend bool operator==(const BoolElem& a, const BoolElem& b) {
        return a.alg == b.alg && a.mask == b.mask;
    }
    friend bool operator!=(const BoolElem& a, const BoolElem& b) { return !(a == b); }
};

BoolElem elem_zero(const BoolAlg& alg);
BoolElem elem_one(const BoolAlg& alg);
BoolElem elem_atom(const BoolAlg& alg, std::size_t atom);
BoolElem elem_from_mask(const BoolAlg& alg, AtomMask mask);
// Parses the canonical form "[p q]"; "[]" is zero.
BoolElem elem_from_labels(const BoolAlg& alg, const std::vector<std::string>& labels);

BoolElem complement(BoolElem a);
BoolElem meet(BoolElem a, BoolElem b);
BoolElem join(BoolElem a, BoolElem b);
// Empty sum is zero, empty product is one (with respect to `alg`).
BoolElem sum(const BoolAlg& alg, const std::vector<BoolElem>& xs);
BoolElem product(const BoolAlg& alg, const std::vector<BoolElem>& xs);
bool leq(BoolElem a, BoolElem b);

// Canonical rendering "[p q]" in atom declaration order.
std::string to_string(BoolElem a);

// Ultrafilters on a finite powerset algebra are exactly the principal filters
// generated by a single atom.
struct Ultrafilter {
    const BoolAlg* alg = nullptr;
    std::size_t atom = 0;

    bool contains(BoolElem x) const;
    const std::string& label() const { return alg->atom_labels()[atom]; }
};

std::vector<Ultrafilter> enumerate_ultrafilters(const BoolAlg& alg);

// M-completeness of an ultrafilter with respect to explicit set-families:
// whenever the sum of a family lies in the filter, some member already does.
// On finite algebras this always holds; the checker exists so the property is
// established by enumeration rather than assumed.
struct MCompletenessReport {
    struct Item {
        std::vector<BoolElem> family;
        BoolElem family_sum;
        std::optional<std::size_t> witness; // index into family, when the sum is in the filter
        bool pass = false;
    };
    std::vector<Item> items;
    bool all_pass = true;
};

MCompletenessReport check_m_complete(const Ultrafilter& u,
                                     const std::vector<std::vector<BoolElem>>& families);

// Every subset of the algebra, used to drive exhaustive family checks. Throws
// errc::bounds when 2^|alg| would exceed `cap`.
std::vector<std::vector<BoolElem>> all_element_families(const BoolAlg& alg, std::size_t cap);

} // namespace bvm
