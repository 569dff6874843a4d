// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/hf.hpp"

#include <algorithm>

namespace bvm {

HfPool::HfPool() {
    Node empty;
    empty.repr = "{}";
    m_nodes.push_back(std::move(empty));
    m_index.emplace("{}", hf_empty);
}

HfId HfPool::intern(std::vector<HfId> elems) {
    std::lock_guard<std::mutex> lock(m_mu);
    for (HfId e : elems)
        if (e >= m_nodes.size())
            fail_input("set element id out of range");
    std::sort(elems.begin(), elems.end(), [&](HfId a, HfId b) {
        const Node& na = m_nodes[a];
        const Node& nb = m_nodes[b];
        if (na.rank != nb.rank)
            return na.rank < nb.rank;
        return na.repr < nb.repr;
    });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

    Node node;
    node.repr = "{";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i)
            node.repr += ',';
        node.repr += m_nodes[elems[i]].repr;
        node.rank = std::max(node.rank, m_nodes[elems[i]].rank + 1);
    }
    node.repr += '}';

    auto it = m_index.find(node.repr);
    if (it != m_index.end())
        return it->second;
    node.elems = std::move(elems);
    HfId id = static_cast<HfId>(m_nodes.size());
    m_index.emplace(node.repr, id);
    m_nodes.push_back(std::move(node));
    return id;
}

// Nodes are immutable once interned and never destroyed, so handing out
// references after dropping the lock is fine; the lock only protects the
// container bookkeeping against a concurrent intern.
const HfPool::Node& HfPool::node(HfId id) const {
    std::lock_guard<std::mutex> lock(m_mu);
    return m_nodes.at(id);
}

const std::vector<HfId>& HfPool::elems(HfId id) const { return node(id).elems; }
unsigned HfPool::rank(HfId id) const { return node(id).rank; }
const std::string& HfPool::repr(HfId id) const { return node(id).repr; }

bool HfPool::contains(HfId set, HfId x) const {
    const auto& es = node(set).elems;
    return std::find(es.begin(), es.end(), x) != es.end();
}

std::size_t HfPool::size() const {
    std::lock_guard<std::mutex> lock(m_mu);
    return m_nodes.size();
}

HfId HfPool::numeral(unsigned n) {
    HfId cur = hf_empty;
    std::vector<HfId> below;
    for (unsigned k = 0; k < n; ++k) {
        below.push_back(cur);
        cur = intern(below);
    }
    return cur;
}

bool HfPool::canon_less(HfId a, HfId b) const {
    const Node& na = node(a);
    const Node& nb = node(b);
    if (na.rank != nb.rank)
        return na.rank < nb.rank;
    return na.repr < nb.repr;
}

std::uint64_t gamma_index(std::uint64_t a, std::uint64_t b) {
    std::uint64_t m = std::max(a, b);
    return m * m + (a < m ? a : m + b);
}

bool Universe::contains(HfId x) const {
    return std::binary_search(m_sorted.begin(), m_sorted.end(), x);
}

Universe build_hf_universe(HfPool& pool, unsigned rank_bound) {
    if (rank_bound < 1)
        fail_input("universe rank bound must be at least 1");
    if (rank_bound > 5)
        fail_bounds("universe rank bound " + std::to_string(rank_bound) + " exceeds cap 5");

    std::vector<HfId> level = {hf_empty}; // sets of rank < 1
    for (unsigned r = 1; r < rank_bound; ++r) {
        // next level: all subsets of the current one
        std::vector<HfId> next;
        next.reserve(std::size_t(1) << level.size());
        for (std::size_t mask = 0; mask < (std::size_t(1) << level.size()); ++mask) {
            std::vector<HfId> subset;
            for (std::size_t i = 0; i < level.size(); ++i)
                if ((mask >> i) & 1)
                    subset.push_back(level[i]);
            next.push_back(pool.intern(std::move(subset)));
        }
        level = std::move(next);
    }

    Universe u;
    u.rank_bound = rank_bound;
    u.members = std::move(level);
    std::sort(u.members.begin(), u.members.end(),
              [&](HfId a, HfId b) { return pool.canon_less(a, b); });
    u.m_sorted = u.members;
    std::sort(u.m_sorted.begin(), u.m_sorted.end());
    return u;
}

bool EnrichmentClass::contains(HfId x) const {
    return std::binary_search(m_sorted.begin(), m_sorted.end(), x);
}

EnrichmentClass mk_enrichment(const HfPool& pool, std::string predicate, std::vector<HfId> extension) {
    EnrichmentClass c;
    c.predicate = std::move(predicate);
    std::sort(extension.begin(), extension.end());
    extension.erase(std::unique(extension.begin(), extension.end()), extension.end());
    c.m_sorted = extension;
    std::sort(extension.begin(), extension.end(),
              [&](HfId a, HfId b) { return pool.canon_less(a, b); });
    c.extension = std::move(extension);
    return c;
}

} // namespace bvm
