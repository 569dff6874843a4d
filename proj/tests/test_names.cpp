// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "bvm/error.hpp"
#include "bvm/hf.hpp"
#include "bvm/names.hpp"

using namespace bvm;

TEST_CASE("the empty name is preinterned at rank zero") {
    NamePool names(mk_powerset_algebra({"p"}));
    CHECK(names.empty_name() == 0);
    CHECK(names.rank(0) == 0);
    CHECK(names.entries(0).empty());
    CHECK(names.mk_name({}) == 0);
}

TEST_CASE("names are interned by their canonical entry list") {
    auto alg = mk_powerset_algebra({"p", "q"});
    NamePool names(alg);
    NameId e = names.empty_name();
    NameId a = names.mk_name({{e, elem_atom(*alg, 0)}});
    NameId b = names.mk_name({{e, elem_atom(*alg, 0)}});
    CHECK(a == b);
    CHECK(names.rank(a) == 1);
    // a kept zero entry is part of the identity
    NameId z = names.mk_name({{e, elem_zero(*alg)}});
    CHECK(z != e);
    CHECK(names.rank(z) == 1);
    // same key twice is malformed
    CHECK_THROWS_AS(
        names.mk_name({{e, elem_atom(*alg, 0)}, {e, elem_atom(*alg, 1)}}), Error);

    CHECK(names.lookup(a, e) == elem_atom(*alg, 0).mask);
    CHECK(!names.lookup(e, a).has_value());
    CHECK(!names.lookup(a, a).has_value());
}

TEST_CASE("stratum sizes follow the partial function count") {
    // |stratum a| = (|B|+1)^|stratum a-1|: each earlier name is absent or
    // mapped to one of |B| elements.
    SUBCASE("one atom") {
        NamePool names(mk_powerset_algebra({"p"}));
        CHECK(stratum(names, 0, 100).size() == 1);
        CHECK(stratum(names, 1, 100).size() == 3);
        CHECK(stratum(names, 2, 100).size() == 27);
        CHECK(stratum_size(2, 0, 1u << 20) == 1);
        CHECK(stratum_size(2, 1, 1u << 20) == 3);
        CHECK(stratum_size(2, 2, 1u << 20) == 27);
        CHECK(stratum_size(2, 3, 1u << 20) == std::nullopt);
    }
    SUBCASE("two atoms") {
        NamePool names(mk_powerset_algebra({"p", "q"}));
        CHECK(stratum(names, 1, 5000).size() == 5);
        CHECK(stratum(names, 2, 5000).size() == 3125);
        CHECK(stratum_size(4, 2, 1u << 20) == 3125);
        CHECK_THROWS_AS(stratum(names, 3, 5000), Error);
    }
}

TEST_CASE("stratum two is exactly the set of partial maps on stratum one") {
    auto alg = mk_powerset_algebra({"p"});
    NamePool names(alg);
    std::vector<NameId> s1 = stratum(names, 1, 100);
    REQUIRE(s1.size() == 3);

    // enumerate all assignments of {absent, [], [p]} to the three keys
    std::set<NameId> expect;
    for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = 0; c1 < 3; ++c1)
            for (int c2 = 0; c2 < 3; ++c2) {
                int cs[] = {c0, c1, c2};
                std::vector<std::pair<NameId, BoolElem>> es;
                for (int i = 0; i < 3; ++i)
                    if (cs[i] > 0)
                        es.emplace_back(s1[i], elem_from_mask(*alg, AtomMask(cs[i] - 1)));
                expect.insert(names.mk_name(std::move(es)));
            }
    CHECK(expect.size() == 27);

    std::vector<NameId> s2 = stratum(names, 2, 100);
    CHECK(std::set<NameId>(s2.begin(), s2.end()) == expect);
    // canonical order and no rank overshoot
    for (std::size_t i = 1; i < s2.size(); ++i)
        CHECK(names.canon_less(s2[i - 1], s2[i]));
    for (NameId n : s2)
        CHECK(names.rank(n) <= 2);
}

TEST_CASE("check names interpret ground sets") {
    HfPool hf;
    NamePool names(mk_powerset_algebra({"p"}));
    CHECK(names.check_name(hf, hf_empty) == names.empty_name());
    HfId s1 = hf.intern({hf_empty});
    NameId c1 = names.check_name(hf, s1);
    REQUIRE(names.entries(c1).size() == 1);
    CHECK(names.entries(c1)[0].first == names.empty_name());
    CHECK(names.entries(c1)[0].second == names.algebra().full_mask());
    CHECK(names.rank(c1) == 1);
    // rank of a check name is the rank of the set
    HfId two = hf.intern({hf_empty, s1});
    CHECK(names.rank(names.check_name(hf, two)) == 2);
    // memoized: same id on the second call
    CHECK(names.check_name(hf, s1) == c1);
}

TEST_CASE("pair, union, and selector constructions") {
    HfPool hf;
    auto alg = mk_powerset_algebra({"p"});
    NamePool names(alg);
    NameId e = names.empty_name();
    NameId a = names.singleton_one(e);

    SUBCASE("kuratowski pair") {
        NameId pr = names.bpair_name(e, a);
        CHECK(names.rank(pr) == std::max(names.rank(e), names.rank(a)) + 2);
        const auto& es = names.entries(pr);
        REQUIRE(es.size() == 2);
        CHECK(es[0].first == names.singleton_one(e));
        CHECK(es[1].first == names.doubleton_one(e, a));
        // degenerate pair collapses to {{a}}
        NameId dd = names.bpair_name(a, a);
        REQUIRE(names.entries(dd).size() == 1);
        CHECK(names.entries(dd)[0].first == names.singleton_one(a));
    }

    SUBCASE("union merges key domains with meet-then-join values") {
        BoolElem p = elem_atom(*alg, 0);
        NameId inner1 = names.mk_name({{e, p}});
        NameId inner2 = names.mk_name({{e, elem_one(*alg)}, {a, p}});
        NameId outer = names.mk_name({{inner1, elem_one(*alg)}, {inner2, p}});
        NameId u = names.union_name(outer);
        // value(e) = 1*p + p*1 = p, value(a) = p*p = p
        CHECK(names.lookup(u, e) == p.mask);
        CHECK(names.lookup(u, a) == p.mask);
        CHECK(names.union_name(e) == e);
    }

    SUBCASE("selector pairs numerals with the keys in canonical order") {
        NameId x = names.doubleton_one(e, a);
        NameId ch = names.choice_fn_name(hf, x);
        const auto& es = names.entries(ch);
        REQUIRE(es.size() == 2);
        NameId n0 = names.check_name(hf, hf.numeral(0));
        NameId n1 = names.check_name(hf, hf.numeral(1));
        std::set<NameId> keys{es[0].first, es[1].first};
        CHECK(keys.count(names.bpair_name(n0, names.entries(x)[0].first)));
        CHECK(keys.count(names.bpair_name(n1, names.entries(x)[1].first)));
    }
}

TEST_CASE("mark and release roll the pool back") {
    HfPool hf;
    auto alg = mk_powerset_algebra({"p"});
    NamePool names(alg);
    NameId a = names.singleton_one(names.empty_name());
    HfId s2 = hf.intern({hf.intern({hf_empty})});

    NamePool::Mark m = names.mark();
    std::size_t before = names.size();
    NameId scratch = names.mk_name({{a, elem_atom(*alg, 0)}});
    NameId chk = names.check_name(hf, s2); // populates the check cache
    CHECK(names.size() > before);
    names.release(m);
    CHECK(names.size() == before);

    // identical rebuilds get the same ids
    CHECK(names.mk_name({{a, elem_atom(*alg, 0)}}) == scratch);
    names.release(m);

    // the check cache forgot the released id: a fresh build works and is
    // internally consistent rather than handing back the dangling id
    NameId again = names.check_name(hf, s2);
    REQUIRE(names.entries(again).size() == 1);
    CHECK(names.entries(again)[0].first == a);
    CHECK(names.check_name(hf, s2) == again);
    (void)chk;
    names.release(m);

    // a mark ahead of the pool is rejected
    NamePool::Mark ahead = m;
    ahead.count = names.size() + 1;
    CHECK_THROWS_AS(names.release(ahead), Error);
}
