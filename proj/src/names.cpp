// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/names.hpp"

#include <algorithm>

namespace bvm {

NamePool::NamePool(std::shared_ptr<const BoolAlg> alg) : m_alg(std::move(alg)) {
    if (!m_alg)
        fail_input("name pool needs an algebra");
    Node empty;
    empty.repr = "name{}";
    m_nodes.push_back(std::move(empty));
    m_index.emplace("name{}", 0);
}

const NamePool::Node& NamePool::node(NameId id) const {
    std::lock_guard<std::mutex> lock(m_mu);
    return m_nodes.at(id);
}

NameId NamePool::mk_name(std::vector<std::pair<NameId, BoolElem>> entries) {
    std::lock_guard<std::mutex> lock(m_mu);
    Node node;
    std::vector<std::pair<NameId, AtomMask>> es;
    es.reserve(entries.size());
    for (const auto& [key, val] : entries) {
        if (key >= m_nodes.size())
            fail_input("name entry key out of range");
        if (val.alg != m_alg.get())
            fail_input("name entry value from a different algebra");
        es.emplace_back(key, val.mask);
    }
    std::sort(es.begin(), es.end(), [&](const auto& a, const auto& b) {
        const Node& na = m_nodes[a.first];
        const Node& nb = m_nodes[b.first];
        if (na.rank != nb.rank)
            return na.rank < nb.rank;
        if (na.repr != nb.repr)
            return na.repr < nb.repr;
        return a.second < b.second;
    });
    for (std::size_t i = 1; i < es.size(); ++i)
        if (es[i].first == es[i - 1].first)
            fail_input("name literal assigns key '" + m_nodes[es[i].first].repr + "' twice");

    node.repr = "name{";
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto& [key, mask] = es[i];
        if (i)
            node.repr += ',';
        node.repr += m_nodes[key].repr;
        node.repr += "->";
        node.repr += to_string(BoolElem{m_alg.get(), mask});
        node.rank = std::max(node.rank, m_nodes[key].rank + 1);
    }
    node.repr += '}';
    node.entries = std::move(es);
    return intern_locked(std::move(node));
}

NameId NamePool::intern_locked(Node&& node) {
    auto it = m_index.find(node.repr);
    if (it != m_index.end())
        return it->second;
    NameId id = static_cast<NameId>(m_nodes.size());
    m_index.emplace(node.repr, id);
    m_nodes.push_back(std::move(node));
    return id;
}

const std::vector<std::pair<NameId, AtomMask>>& NamePool::entries(NameId id) const {
    return node(id).entries;
}

unsigned NamePool::rank(NameId id) const { return node(id).rank; }
const std::string& NamePool::repr(NameId id) const { return node(id).repr; }

std::optional<AtomMask> NamePool::lookup(NameId y, NameId x) const {
    for (const auto& [key, mask] : node(y).entries)
        if (key == x)
            return mask;
    return std::nullopt;
}

bool NamePool::canon_less(NameId a, NameId b) const {
    const Node& na = node(a);
    const Node& nb = node(b);
    if (na.rank != nb.rank)
        return na.rank < nb.rank;
    return na.repr < nb.repr;
}

std::size_t NamePool::size() const {
    std::lock_guard<std::mutex> lock(m_mu);
    return m_nodes.size();
}

NameId NamePool::check_name(const HfPool& pool, HfId s) {
    {
        std::lock_guard<std::mutex> lock(m_mu);
        auto it = m_check_cache.find(s);
        if (it != m_check_cache.end())
            return it->second;
    }
    std::vector<std::pair<NameId, BoolElem>> entries;
    for (HfId e : pool.elems(s))
        entries.emplace_back(check_name(pool, e), elem_one(*m_alg));
    NameId id = mk_name(std::move(entries));
    std::lock_guard<std::mutex> lock(m_mu);
    m_check_cache.emplace(s, id);
    return id;
}

NameId NamePool::singleton_one(NameId a) { return mk_name({{a, elem_one(*m_alg)}}); }

NameId NamePool::doubleton_one(NameId a, NameId b) {
    if (a == b)
        return singleton_one(a);
    return mk_name({{a, elem_one(*m_alg)}, {b, elem_one(*m_alg)}});
}

NameId NamePool::bpair_name(NameId a, NameId b) {
    return doubleton_one(singleton_one(a), doubleton_one(a, b));
}

NameId NamePool::union_name(NameId a) {
    // value(s) = sum over keys t of a with s in dom t of a(t)*t(s)
    std::vector<std::pair<NameId, AtomMask>> acc;
    for (const auto& [t, at] : entries(a)) {
        for (const auto& [s, ts] : entries(t)) {
            AtomMask v = at & ts;
            auto it = std::find_if(acc.begin(), acc.end(),
                                   [&](const auto& e) { return e.first == s; });
            if (it == acc.end())
                acc.emplace_back(s, v);
            else
                it->second |= v;
        }
    }
    std::vector<std::pair<NameId, BoolElem>> es;
    es.reserve(acc.size());
    for (const auto& [s, v] : acc)
        es.emplace_back(s, BoolElem{m_alg.get(), v});
    return mk_name(std::move(es));
}

NameId NamePool::choice_fn_name(HfPool& pool, NameId x) {
    std::vector<NameId> keys;
    for (const auto& [k, v] : entries(x))
        keys.push_back(k);
    std::vector<std::pair<NameId, BoolElem>> es;
    es.reserve(keys.size());
    for (std::size_t j = 0; j < keys.size(); ++j) {
        NameId idx = check_name(pool, pool.numeral(static_cast<unsigned>(j)));
        es.emplace_back(bpair_name(idx, keys[j]), elem_one(*m_alg));
    }
    return mk_name(std::move(es));
}

NamePool::Mark NamePool::mark() const {
    std::lock_guard<std::mutex> lock(m_mu);
    return {m_nodes.size()};
}

void NamePool::release(Mark m) {
    std::lock_guard<std::mutex> lock(m_mu);
    if (m.count > m_nodes.size())
        fail_input("release mark is ahead of the pool");
    while (m_nodes.size() > m.count) {
        m_index.erase(m_nodes.back().repr);
        m_nodes.pop_back();
    }
    for (auto it = m_check_cache.begin(); it != m_check_cache.end();) {
        if (it->second >= m.count)
            it = m_check_cache.erase(it);
        else
            ++it;
    }
}

std::vector<NameId> stratum(NamePool& pool, unsigned alpha, std::size_t cap) {
    std::vector<NameId> cur = {pool.empty_name()};
    const std::size_t n_elems = std::size_t(1) << pool.algebra().atom_count();
    for (unsigned level = 1; level <= alpha; ++level) {
        // (n_elems + 1)^|cur| assignments: digit 0 = key absent, digit v+1 = value v
        double est = 1.0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            est *= double(n_elems + 1);
            if (est > double(cap) * 1.0000001)
                fail_bounds("stratum " + std::to_string(level) + " has (" +
                            std::to_string(n_elems + 1) + ")^" + std::to_string(cur.size()) +
                            " names, cap is " + std::to_string(cap));
        }
        std::vector<NameId> next;
        next.reserve(static_cast<std::size_t>(est));
        std::vector<std::size_t> digits(cur.size(), 0);
        for (;;) {
            std::vector<std::pair<NameId, BoolElem>> es;
            for (std::size_t i = 0; i < digits.size(); ++i)
                if (digits[i] > 0)
                    es.emplace_back(cur[i], elem_from_mask(pool.algebra(),
                                                           static_cast<AtomMask>(digits[i] - 1)));
            next.push_back(pool.mk_name(std::move(es)));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == n_elems + 1)
                digits[i++] = 0;
            if (i == digits.size())
                break;
        }
        std::sort(next.begin(), next.end(),
                  [&](NameId a, NameId b) { return pool.canon_less(a, b); });
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    return cur;
}

std::optional<std::uint64_t> stratum_size(std::size_t algebra_size, unsigned alpha,
                                          std::uint64_t cap) {
    std::uint64_t count = 1;
    for (unsigned level = 1; level <= alpha; ++level) {
        // (algebra_size + 1)^count
        std::uint64_t next = 1;
        for (std::uint64_t i = 0; i < count; ++i) {
            if (next > cap / (algebra_size + 1) + 1)
                return std::nullopt;
            next *= algebra_size + 1;
            if (next > cap)
                return std::nullopt;
        }
        count = next;
    }
    return count;
}

} // namespace bvm
