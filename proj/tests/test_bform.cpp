// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <functional>
#include <string>
#include <vector>

#include "bvm/bform.hpp"
#include "bvm/error.hpp"

using namespace bvm;

namespace {

// reference truth table of a ref over the three labels a, b, c
unsigned table_of(const BForm& bf, BForm::Ref r) {
    unsigned t = 0;
    for (unsigned m = 0; m < 8; ++m) {
        bool v = bf.eval(r, [&](const std::string& label) {
            if (label == "a") return (m & 1) != 0;
            if (label == "b") return (m & 2) != 0;
            return (m & 4) != 0;
        });
        if (v)
            t |= 1u << m;
    }
    return t;
}

} // namespace

TEST_CASE("constants and variables") {
    BForm bf;
    CHECK(BForm::zero == 0);
    CHECK(BForm::one == 1);
    BForm::Ref a = bf.var("a");
    CHECK(a != BForm::zero);
    CHECK(a != BForm::one);
    CHECK(bf.var("a") == a); // interned by label
    CHECK(bf.var("b") != a);
    CHECK(bf.var_count() == 2);
    CHECK(bf.support(a) == std::vector<std::string>{"a"});
}

TEST_CASE("boolean laws canonicalize to node equality") {
    BForm bf;
    BForm::Ref a = bf.var("a"), b = bf.var("b"), c = bf.var("c");

    CHECK(bf.complement(BForm::zero) == BForm::one);
    CHECK(bf.complement(bf.complement(a)) == a);
    CHECK(bf.meet(a, a) == a);
    CHECK(bf.join(a, a) == a);
    CHECK(bf.meet(a, bf.complement(a)) == BForm::zero);
    CHECK(bf.join(a, bf.complement(a)) == BForm::one);
    CHECK(bf.meet(a, b) == bf.meet(b, a));
    CHECK(bf.join(a, b) == bf.join(b, a));
    // De Morgan
    CHECK(bf.complement(bf.meet(a, b)) == bf.join(bf.complement(a), bf.complement(b)));
    // absorption and distribution
    CHECK(bf.join(a, bf.meet(a, b)) == a);
    CHECK(bf.meet(a, bf.join(b, c)) == bf.join(bf.meet(a, b), bf.meet(a, c)));
    // empty sum and product
    CHECK(bf.sum({}) == BForm::zero);
    CHECK(bf.product({}) == BForm::one);
    CHECK(bf.sum({a, b, c}) == bf.join(a, bf.join(b, c)));
}

TEST_CASE("two refs are equal exactly when their tables are") {
    BForm bf;
    BForm::Ref a = bf.var("a"), b = bf.var("b"), c = bf.var("c");
    // a pile of expressions, some equivalent on purpose
    std::vector<BForm::Ref> pile = {
        BForm::zero,
        BForm::one,
        a,
        b,
        bf.meet(a, b),
        bf.complement(bf.join(bf.complement(a), bf.complement(b))),
        bf.join(a, b),
        bf.meet(bf.join(a, b), bf.join(a, c)),
        bf.join(a, bf.meet(b, c)),
        bf.complement(a),
        bf.meet(bf.complement(a), bf.complement(b)),
        bf.sum({a, b, c}),
        bf.product({a, b, c}),
        bf.meet(a, bf.complement(a)),
    };
    for (BForm::Ref x : pile)
        for (BForm::Ref y : pile)
            CHECK((x == y) == (table_of(bf, x) == table_of(bf, y)));
}

TEST_CASE("node sharing keeps idempotent work free") {
    BForm bf;
    BForm::Ref a = bf.var("a"), b = bf.var("b");
    BForm::Ref m = bf.meet(a, b);
    std::size_t nodes = bf.node_count();
    CHECK(bf.meet(a, b) == m);
    CHECK(bf.meet(b, a) == m);
    CHECK(bf.node_count() == nodes);
}

TEST_CASE("support lists the labels a node depends on") {
    BForm bf;
    BForm::Ref a = bf.var("a"), b = bf.var("b");
    BForm::Ref dep = bf.join(bf.meet(a, b), bf.meet(a, bf.complement(b)));
    // simplifies to a, so b drops out of the support
    CHECK(dep == a);
    CHECK(bf.support(dep) == std::vector<std::string>{"a"});
    CHECK(bf.support(bf.meet(a, b)) == std::vector<std::string>{"a", "b"});
    CHECK(bf.support(BForm::one).empty());
}

TEST_CASE("canonical forms of sentences factor through propositional equivalence") {
    BForm bf;
    PrintContext pc;
    auto form = [&](const char* text) {
        ParseContext c;
        return canonical_form(bf, *parse_formula(text, c), pc);
    };
    CHECK(form("not(not(v0 = v1))") == form("v0 = v1"));
    CHECK(form("and(v0 = v1, v0 in v1)") == form("and(v0 in v1, v0 = v1)"));
    CHECK(form("or(v0 = v1, not(v0 = v1))") == BForm::one);
    CHECK(form("and(v0 = v1, not(v0 = v1))") == BForm::zero);
    CHECK(form("v0 = v1") != form("v1 = v0")); // distinct atoms, no set theory here
    CHECK(form("and()") == BForm::one);
    CHECK(form("or()") == BForm::zero);
    // implication-style rewriting: or(not a, not b) vs not(and(a, b))
    CHECK(form("or(not(v0 = v1), not(v0 in v1))") == form("not(and(v0 = v1, v0 in v1))"));

    ParseContext c;
    FormulaPtr q = parse_formula("exists x. x = x", c);
    CHECK_THROWS_AS(canonical_form(bf, *q, pc), Error);
}

TEST_CASE("evaluation matches the assignment on the atoms") {
    BForm bf;
    PrintContext pc;
    ParseContext c;
    FormulaPtr f = parse_formula("or(and(v0 = v1, v0 in v1), not(v0 = v1))", c);
    BForm::Ref r = canonical_form(bf, *f, pc);
    for (unsigned m = 0; m < 4; ++m) {
        bool eq = (m & 1) != 0, mem = (m & 2) != 0;
        bool want = (eq && mem) || !eq;
        CHECK(bf.eval(r, [&](const std::string& label) {
                  return label == "v0 = v1" ? eq : mem;
              }) == want);
    }
}
