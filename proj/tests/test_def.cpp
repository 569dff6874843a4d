// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "bvm/error.hpp"
#include "bvm/hf.hpp"

using namespace bvm;

namespace {

using Subsets = std::vector<std::vector<HfId>>;

Subsets powerset_sorted(const HfPool& pool, const std::vector<HfId>& universe) {
    Subsets out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << universe.size()); ++mask) {
        std::vector<HfId> subset;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if ((mask >> i) & 1)
                subset.push_back(universe[i]);
        out.push_back(std::move(subset));
    }
    std::sort(out.begin(), out.end(), [&](const std::vector<HfId>& a, const std::vector<HfId>& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return pool.canon_less(a[i], b[i]);
        return false;
    });
    return out;
}

DefOptions opts(unsigned size_bound) {
    DefOptions o;
    o.size_bound = size_bound;
    return o;
}

} // namespace

TEST_CASE("equality disjunctions pin down every subset") {
    // with constants available, size 1+3n is enough to carve out any subset
    // of an n-element universe, so the result saturates at the full powerset
    for (unsigned rb = 2; rb <= 3; ++rb) {
        HfPool pool;
        Universe u = build_hf_universe(pool, rb);
        unsigned bound = 1 + 3 * static_cast<unsigned>(u.members.size());
        Subsets got = definable_subsets(pool, u.members, nullptr, opts(bound));
        CHECK(got == powerset_sorted(pool, u.members));
    }
}

TEST_CASE("the empty universe has one definable subset") {
    HfPool pool;
    Subsets got = definable_subsets(pool, {}, nullptr, opts(4));
    CHECK(got == Subsets{{}});
}

TEST_CASE("a singleton universe saturates at size four") {
    HfPool pool;
    Subsets got = definable_subsets(pool, {hf_empty}, nullptr, opts(4));
    CHECK(got == Subsets{{}, {hf_empty}});
}

TEST_CASE("results grow monotonically with the size bound") {
    HfPool pool;
    Universe u = build_hf_universe(pool, 3);
    Subsets prev;
    for (unsigned bound = 2; bound <= 13; ++bound) {
        Subsets cur = definable_subsets(pool, u.members, nullptr, opts(bound));
        std::set<std::vector<HfId>> cur_set(cur.begin(), cur.end());
        for (const auto& s : prev)
            CHECK(cur_set.count(s));
        prev = std::move(cur);
    }
    // saturated at the powerset, which nothing can grow past
    CHECK(prev == powerset_sorted(pool, u.members));
}

TEST_CASE("an extra predicate is definable from size two on") {
    HfPool pool;
    Universe u = build_hf_universe(pool, 3);
    EnrichmentClass h = mk_enrichment(pool, "H", {hf_empty, pool.intern({hf_empty})});
    Subsets got = definable_subsets(pool, u.members, &h, opts(3));
    std::set<std::vector<HfId>> as_set(got.begin(), got.end());
    CHECK(as_set.count(h.extension));
    // its complement arrives with the negation at size three
    std::vector<HfId> comp;
    for (HfId x : u.members)
        if (!h.contains(x))
            comp.push_back(x);
    CHECK(as_set.count(comp));
}

TEST_CASE("universes must be transitive") {
    HfPool pool;
    HfId s1 = pool.intern({hf_empty});
    CHECK_THROWS_AS(definable_subsets(pool, {s1}, nullptr, opts(6)), Error);
}

TEST_CASE("caps turn runaway enumerations into bounds errors") {
    HfPool pool;
    Universe u = build_hf_universe(pool, 4);
    DefOptions o = opts(12);
    o.table_cap = 16;
    try {
        definable_subsets(pool, u.members, nullptr, o);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::bounds);
    }
}
