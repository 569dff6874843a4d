// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bvm/boolean_algebra.hpp"
#include "bvm/hf.hpp"
#include "bvm/ids.hpp"

namespace bvm {

// Names over a fixed algebra: finite partial functions from earlier names to
// algebra elements, hash-consed like HfPool. An entry with value zero is kept
// (the domain is part of the identity), which is exactly what separates the
// two evaluation modes downstream. Entries are stored in the canonical key
// order; the rendered form doubles as the literal syntax "name{k->[p],...}".
class NamePool {
public:
    explicit NamePool(std::shared_ptr<const BoolAlg> alg);

    const BoolAlg& algebra() const { return *m_alg; }
    std::shared_ptr<const BoolAlg> algebra_ptr() const { return m_alg; }

    NameId mk_name(std::vector<std::pair<NameId, BoolElem>> entries);
    const std::vector<std::pair<NameId, AtomMask>>& entries(NameId id) const;
    unsigned rank(NameId id) const;
    const std::string& repr(NameId id) const;
    NameId empty_name() const { return 0; }
    std::optional<AtomMask> lookup(NameId y, NameId x) const; // y(x)
    bool canon_less(NameId a, NameId b) const;                // (rank, rendered form)
    std::size_t size() const;

    // Check name of a ground set: domain = check names of its elements, all
    // values one. Interpretation returns the set under every ultrafilter.
    NameId check_name(const HfPool& pool, HfId s);

    NameId singleton_one(NameId a);           // {a -> 1}
    NameId doubleton_one(NameId a, NameId b); // {a -> 1, b -> 1}
    // Kuratowski pair {{a},{a,b}} with all values one; rank max(ra,rb)+2.
    NameId bpair_name(NameId a, NameId b);
    // Union of the keys of `a`: value of s is the sum of a(t)*t(s).
    NameId union_name(NameId a);
    // Indexed selector for the keys of `x`: all pairs (check(j), k) where k is
    // the j-th key of x in canonical order, values one. Interprets to a
    // function from an initial segment of the numerals onto the images of the
    // keys, which is the choice-function witness at this scale.
    NameId choice_fn_name(HfPool& pool, NameId x);

    // Rolls the pool back to a previous size. Only safe for ids handed out
    // after `mark`; callers own the discipline of not retaining them.
    struct Mark {
        std::size_t count = 0;
    };
    Mark mark() const;
    void release(Mark m);

private:
    struct Node {
        std::vector<std::pair<NameId, AtomMask>> entries;
        unsigned rank = 0;
        std::string repr;
    };

    const Node& node(NameId id) const;
    NameId intern_locked(Node&& node);

    std::shared_ptr<const BoolAlg> m_alg;
    mutable std::mutex m_mu;
    std::deque<Node> m_nodes;
    std::unordered_map<std::string, NameId> m_index;
    std::unordered_map<HfId, NameId> m_check_cache;
};

// Cumulative name stratum: all names of rank <= alpha. Stratum alpha is the
// set of partial functions from stratum alpha-1 into the algebra, so its size
// is (|B|+1)^(previous size); `cap` guards the blowup. Result is in canonical
// order.
std::vector<NameId> stratum(NamePool& pool, unsigned alpha, std::size_t cap);

// Size of stratum alpha without enumerating it; nullopt when it overflows
// either the cap or the integer.
std::optional<std::uint64_t> stratum_size(std::size_t algebra_size, unsigned alpha,
                                          std::uint64_t cap);

} // namespace bvm
