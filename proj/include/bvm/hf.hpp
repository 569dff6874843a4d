// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "bvm/error.hpp"

namespace bvm {

// Hereditarily finite sets, hash-consed: structurally equal sets always get
// the same id, so set equality is id equality. Ids are only meaningful
// relative to the pool that issued them. Element lists are stored in the
// canonical order (rank, then rendered form), which makes renderings and all
// enumerations deterministic.
using HfId = std::uint32_t;
inline constexpr HfId hf_empty = 0;

class HfPool {
public:
    HfPool();

    HfId intern(std::vector<HfId> elems);
    const std::vector<HfId>& elems(HfId id) const;
    unsigned rank(HfId id) const;
    const std::string& repr(HfId id) const;
    bool contains(HfId set, HfId x) const;
    std::size_t size() const;

    // von Neumann numeral: 0 = {}, n+1 = n + {n}.
    HfId numeral(unsigned n);

    // Canonical order used everywhere sets are listed.
    bool canon_less(HfId a, HfId b) const;

private:
    struct Node {
        std::vector<HfId> elems;
        unsigned rank = 0;
        std::string repr;
    };

    const Node& node(HfId id) const;

    mutable std::mutex m_mu;
    std::deque<Node> m_nodes; // deque: nodes stay put while the pool grows
    std::unordered_map<std::string, HfId> m_index;
};

// Pairing function on ordinals; strictly monotone in the max, so recursions
// indexed by it terminate. Enumerates squares shell by shell.
std::uint64_t gamma_index(std::uint64_t a, std::uint64_t b);

struct Universe {
    unsigned rank_bound = 0;
    std::vector<HfId> members; // canonical order
    bool contains(HfId x) const;

    std::vector<HfId> m_sorted; // by id, for membership tests
};

// All sets of rank < rank_bound. Sizes grow as iterated powersets, so the
// bound is capped at 5 (65536 members).
Universe build_hf_universe(HfPool& pool, unsigned rank_bound);

struct EnrichmentClass {
    std::string predicate;
    std::vector<HfId> extension; // canonical order
    bool contains(HfId x) const;

    std::vector<HfId> m_sorted;
};

EnrichmentClass mk_enrichment(const HfPool& pool, std::string predicate, std::vector<HfId> extension);

// Subsets of `universe` definable by a first-order formula with one free
// variable, constants from `universe`, quantifiers relativized to it, and an
// optional extra unary predicate. `size_bound` caps formula size under the
// measure used by the formula module; `max_depth` caps simultaneously open
// quantifiers. Exact for that fragment: computed by dynamic programming over
// truth tables together with the free variables realizing them.
struct DefOptions {
    unsigned size_bound = 0;
    unsigned max_depth = 2;
    std::size_t table_cap = 2000000;
};

std::vector<std::vector<HfId>> definable_subsets(const HfPool& pool,
                                                 const std::vector<HfId>& universe,
                                                 const EnrichmentClass* a_class,
                                                 const DefOptions& opt);

} // namespace bvm
