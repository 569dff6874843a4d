// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <functional>
#include <vector>

#include "bvm/boolean_algebra.hpp"
#include "bvm/error.hpp"

using namespace bvm;

namespace {

errc thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return errc::ok;
}

} // namespace

TEST_CASE("powerset algebra construction") {
    auto alg = mk_powerset_algebra({"p", "q", "r"});
    CHECK(alg->atom_count() == 3);
    CHECK(alg->full_mask() == 0b111);
    CHECK(alg->atom_index("p") == 0);
    CHECK(alg->atom_index("r") == 2);
    CHECK(alg->atom_index("s") == -1);

    CHECK(thrown_code([] { mk_powerset_algebra({}); }) == errc::input);
    CHECK(thrown_code([] { mk_powerset_algebra({"p", "p"}); }) == errc::input);
    CHECK(thrown_code([] { mk_powerset_algebra({""}); }) == errc::input);
    std::vector<std::string> many;
    for (int i = 0; i < 17; ++i)
        many.push_back("a" + std::to_string(i));
    CHECK(thrown_code([&] { mk_powerset_algebra(many); }) == errc::bounds);
}

TEST_CASE("element operations are the bitwise ones, exhaustively") {
    auto alg = mk_powerset_algebra({"p", "q", "r"});
    for (AtomMask a = 0; a <= alg->full_mask(); ++a) {
        BoolElem x = elem_from_mask(*alg, a);
        CHECK(complement(x).mask == (~a & alg->full_mask()));
        CHECK(meet(x, complement(x)).is_zero());
        CHECK(join(x, complement(x)).is_one());
        for (AtomMask b = 0; b <= alg->full_mask(); ++b) {
            BoolElem y = elem_from_mask(*alg, b);
            CHECK(meet(x, y).mask == (a & b));
            CHECK(join(x, y).mask == (a | b));
            CHECK(leq(x, y) == ((a & ~b) == 0));
            // order agrees with the lattice: x <= y iff join is y iff meet is x
            CHECK(leq(x, y) == (join(x, y) == y));
            CHECK(leq(x, y) == (meet(x, y) == x));
        }
    }
}

TEST_CASE("empty sum is zero and empty product is one") {
    auto alg = mk_powerset_algebra({"p", "q"});
    CHECK(sum(*alg, {}) == elem_zero(*alg));
    CHECK(product(*alg, {}) == elem_one(*alg));

    std::vector<BoolElem> xs{elem_atom(*alg, 0), elem_atom(*alg, 1)};
    CHECK(sum(*alg, xs) == elem_one(*alg));
    CHECK(product(*alg, xs) == elem_zero(*alg));
}

TEST_CASE("canonical rendering and label parsing") {
    auto alg = mk_powerset_algebra({"p", "q"});
    CHECK(to_string(elem_zero(*alg)) == "[]");
    CHECK(to_string(elem_one(*alg)) == "[p q]");
    CHECK(to_string(elem_atom(*alg, 1)) == "[q]");
    // declaration order wins over mention order
    CHECK(elem_from_labels(*alg, {"q", "p"}) == elem_one(*alg));
    CHECK(thrown_code([&] { elem_from_labels(*alg, {"z"}); }) == errc::input);
    CHECK(thrown_code([&] { elem_from_mask(*alg, 0b100); }) == errc::input);
}

TEST_CASE("ultrafilters are the principal filters of the atoms") {
    auto alg = mk_powerset_algebra({"p", "q", "r"});
    auto ultras = enumerate_ultrafilters(*alg);
    REQUIRE(ultras.size() == 3);
    for (std::size_t i = 0; i < ultras.size(); ++i) {
        CHECK(ultras[i].atom == i);
        CHECK(ultras[i].label() == alg->atom_labels()[i]);
        for (AtomMask m = 0; m <= alg->full_mask(); ++m) {
            BoolElem x = elem_from_mask(*alg, m);
            CHECK(ultras[i].contains(x) == (((m >> i) & 1) != 0));
            // dichotomy: exactly one of x, -x is in the filter
            CHECK(ultras[i].contains(x) != ultras[i].contains(complement(x)));
        }
    }
}

TEST_CASE("accepted sums always expose an accepted summand") {
    auto alg = mk_powerset_algebra({"p", "q"});
    auto families = all_element_families(*alg, 1 << 16);
    CHECK(families.size() == 16); // all subsets of a 4-element algebra
    for (const Ultrafilter& u : enumerate_ultrafilters(*alg)) {
        MCompletenessReport rep = check_m_complete(u, families);
        CHECK(rep.all_pass);
        REQUIRE(rep.items.size() == families.size());
        for (const auto& item : rep.items) {
            CHECK(item.pass);
            CHECK(item.family_sum == sum(*alg, item.family));
            if (u.contains(item.family_sum)) {
                REQUIRE(item.witness.has_value());
                CHECK(u.contains(item.family[*item.witness]));
            } else {
                CHECK(!item.witness.has_value());
            }
        }
    }
}

TEST_CASE("family enumeration respects its cap") {
    auto alg4 = mk_powerset_algebra({"a", "b", "c", "d"});
    CHECK(all_element_families(*alg4, 1 << 16).size() == 65536);
    auto alg5 = mk_powerset_algebra({"a", "b", "c", "d", "e"});
    CHECK(thrown_code([&] { all_element_families(*alg5, 1 << 16); }) == errc::bounds);
}
