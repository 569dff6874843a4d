// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <set>
#include <string>

#include "bvm/error.hpp"
#include "bvm/formula.hpp"
#include "bvm/hf.hpp"
#include "bvm/names.hpp"
#include "bvm/reflect.hpp"

using namespace bvm;

namespace {

Term v(const char* name) { return Term::mk_var(name); }

} // namespace

TEST_CASE("size measure") {
    FormulaPtr eq = Formula::eq(v("x"), v("y"));
    FormulaPtr mem = Formula::mem(v("x"), v("y"));
    FormulaPtr pr = Formula::predicate("G", v("x"));
    CHECK(eq->size() == 3);
    CHECK(mem->size() == 3);
    CHECK(pr->size() == 2);
    CHECK(Formula::neg(eq)->size() == 4);
    CHECK(Formula::exists("x", mem)->size() == 4);
    CHECK(Formula::conj({eq, pr})->size() == 6);
    CHECK(Formula::disj({eq, mem, pr})->size() == 9);
    CHECK(Formula::truth()->size() == 1);
    CHECK(Formula::falsity()->size() == 1);
}

TEST_CASE("free variables and sentences") {
    FormulaPtr f = Formula::exists("x", Formula::mem(v("x"), v("y")));
    CHECK(f->free_vars() == std::set<std::string>{"y"});
    CHECK(!f->is_sentence());
    CHECK(Formula::exists("y", f)->is_sentence());
    CHECK(f->quantifier_free() == false);
    CHECK(Formula::eq(v("x"), v("x"))->quantifier_free());
}

TEST_CASE("substitution replaces free occurrences only") {
    HfPool hf;
    Term c = Term::mk_set(hf.intern({hf_empty}));
    // y free here, x bound
    FormulaPtr f = Formula::exists("x", Formula::mem(v("x"), v("y")));
    FormulaPtr g = substitute(f, "y", c);
    CHECK(g->free_vars().empty());
    CHECK(g->kids()[0]->rhs() == c);
    // substituting for the bound variable is a no-op
    FormulaPtr h = substitute(f, "x", c);
    CHECK(equal(*h, *f));
    // variable-for-variable substitution under a binder of that spelling is refused
    FormulaPtr cap = Formula::exists("z", Formula::mem(v("z"), v("y")));
    CHECK_THROWS_AS(substitute(cap, "y", Term::mk_var("z")), Error);
}

TEST_CASE("parsing the core grammar") {
    HfPool hf;
    ParseContext pc;
    pc.hf = &hf;
    pc.predicates.insert("G");

    FormulaPtr f = parse_formula("exists x. x in {{}}", pc);
    CHECK(f->kind() == Formula::Kind::exists);
    CHECK(f->kids()[0]->kind() == Formula::Kind::mem);
    CHECK(f->kids()[0]->rhs().kind == Term::Kind::set_ref);
    CHECK(hf.repr(f->kids()[0]->rhs().set) == "{{}}");

    FormulaPtr g = parse_formula("and(G(x), not(x = y))", pc);
    CHECK(g->kind() == Formula::Kind::conj);
    CHECK(g->kids().size() == 2);
    CHECK(g->kids()[0]->pred() == "G");

    // forall is sugar for not-exists-not
    FormulaPtr fa = parse_formula("forall x. x = x", pc);
    CHECK(fa->kind() == Formula::Kind::neg);
    CHECK(fa->kids()[0]->kind() == Formula::Kind::exists);
    CHECK(fa->kids()[0]->kids()[0]->kind() == Formula::Kind::neg);

    CHECK(parse_formula("and()", pc)->size() == 1);
    CHECK(parse_formula("or()", pc)->size() == 1);

    CHECK_THROWS_AS(parse_formula("exists . x = x", pc), Error);
    CHECK_THROWS_AS(parse_formula("x =", pc), Error);
    CHECK_THROWS_AS(parse_formula("x = x trailing", pc), Error);
    // undeclared predicate
    CHECK_THROWS_AS(parse_formula("H(x)", pc), Error);
}

TEST_CASE("name literals parse and render consistently") {
    HfPool hf;
    auto alg = mk_powerset_algebra({"p", "q"});
    NamePool names(alg);
    ParseContext pc;
    pc.hf = &hf;
    pc.names = &names;

    Term t = parse_term("name{check({}) -> [p]}", pc);
    REQUIRE(t.kind == Term::Kind::name_ref);
    const auto& es = names.entries(t.name);
    REQUIRE(es.size() == 1);
    CHECK(es[0].first == names.empty_name());
    CHECK(es[0].second == 0b01);

    Term chk = parse_term("check({{}})", pc);
    REQUIRE(chk.kind == Term::Kind::name_ref);
    CHECK(chk.name == names.check_name(hf, hf.intern({hf_empty})));

    PrintContext out;
    out.hf = &hf;
    out.names = &names;
    // print then reparse lands on the same interned name
    std::string rendered = print_term(t, out);
    Term back = parse_term(rendered, pc);
    CHECK(back.name == t.name);
}

TEST_CASE("printing and reparsing generated formulas is the identity") {
    ParseContext pc;
    PrintContext out;
    for (const FormulaPtr& f : formula_battery(8, 2, true)) {
        std::string s = print_formula(*f, out);
        FormulaPtr back = parse_formula(s, [&] {
            ParseContext pg = pc;
            pg.predicates.insert("G");
            return pg;
        }());
        CHECK(equal(*f, *back));
        CHECK(print_formula(*back, out) == s);
    }
}

TEST_CASE("structural equality distinguishes kinds and order") {
    FormulaPtr a = Formula::eq(v("x"), v("y"));
    FormulaPtr b = Formula::eq(v("y"), v("x"));
    CHECK(!equal(*a, *b));
    CHECK(equal(*Formula::conj({a, b}), *Formula::conj({a, b})));
    CHECK(!equal(*Formula::conj({a, b}), *Formula::conj({b, a})));
    CHECK(!equal(*a, *Formula::mem(v("x"), v("y"))));
}
