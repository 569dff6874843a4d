// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "bvm/reflect.hpp"
#include "bvm/workspace.hpp"

using namespace bvm;

namespace {

WorkspaceBounds small_bounds() {
    WorkspaceBounds b;
    b.rank_bound = 3;
    b.max_name_rank = 2;
    return b;
}

} // namespace

TEST_CASE("the smallest battery is the two atoms on one variable") {
    std::vector<FormulaPtr> fs = formula_battery(3, 1, false);
    REQUIRE(fs.size() == 2);
    PrintContext pc;
    CHECK(print_formula(*fs[0], pc) == "v0 = v0");
    CHECK(print_formula(*fs[1], pc) == "v0 in v0");
}

TEST_CASE("battery invariants") {
    std::vector<FormulaPtr> fs = formula_battery(7, 2, true);
    CHECK(fs.size() > 50);
    PrintContext pc;
    std::set<std::string> seen;
    unsigned prev_size = 0;
    bool saw_g = false, saw_exists = false;
    for (const FormulaPtr& f : fs) {
        CHECK(f->size() <= 7);
        CHECK(f->size() >= prev_size); // sorted by size first
        prev_size = f->size();
        CHECK(seen.insert(print_formula(*f, pc)).second); // no duplicates
        for (const std::string& v : f->free_vars())
            CHECK((v == "v0" || v == "v1"));
        if (f->kind() == Formula::Kind::pred)
            saw_g = true;
        if (f->kind() == Formula::Kind::exists) {
            saw_exists = true;
            // non-vacuous: the bound variable occurs in the body
            CHECK(f->kids()[0]->free_vars().count(f->var()));
        }
    }
    CHECK(saw_g);
    CHECK(saw_exists);
    // without the predicate, no pred atoms appear
    for (const FormulaPtr& f : formula_battery(5, 1, false))
        CHECK(f->kind() != Formula::Kind::pred);
}

TEST_CASE("quantifier free formulas reflect at every level") {
    Workspace ws({"p"}, small_bounds());
    ValueCtx ctx(ws);
    auto gs = enumerate_ultrafilters(*ws.algebra);
    for (const FormulaPtr& f : formula_battery(6, 2, false)) {
        if (!f->quantifier_free())
            continue;
        for (unsigned alpha = 0; alpha <= 2; ++alpha)
            CHECK(reflects(ctx, gs[0], f, alpha));
    }
}

TEST_CASE("an existential can fail to reflect at the bottom") {
    Workspace ws({"p"}, small_bounds());
    ValueCtx ctx(ws);
    auto gs = enumerate_ultrafilters(*ws.algebra);
    NameId e = ws.names->empty_name();

    // "something has the empty name as a member": no rank-zero witness,
    // plenty higher up
    FormulaPtr f = Formula::exists("v0", Formula::mem(Term::mk_name(e), Term::mk_var("v0")));
    ReflectFailure why;
    CHECK(!reflects(ctx, gs[0], f, 0, &why));
    CHECK(why.beta >= 1);
    CHECK(why.beta <= ws.bounds.max_name_rank);
    CHECK(why.gamma >= why.beta);
    // the recorded witness really does contain the empty name mod the filter
    CHECK(gs[0].contains(ctx.value_atomic(AtomKind::mem, e, why.witness)));

    CHECK(reflects(ctx, gs[0], f, 1));
    CHECK(reflects(ctx, gs[0], f, 2));

    // negation passes through the predicate unchanged
    CHECK(!reflects(ctx, gs[0], Formula::neg(f), 0));
    CHECK(reflects(ctx, gs[0], Formula::neg(f), 1));

    // while a self-satisfied existential reflects everywhere
    FormulaPtr ok = Formula::exists("v0", Formula::eq(Term::mk_var("v0"), Term::mk_var("v0")));
    CHECK(reflects(ctx, gs[0], ok, 0));
}

TEST_CASE("junctions reflect when their parts do") {
    Workspace ws({"p"}, small_bounds());
    ValueCtx ctx(ws);
    auto gs = enumerate_ultrafilters(*ws.algebra);
    NameId e = ws.names->empty_name();
    FormulaPtr bad = Formula::exists("v0", Formula::mem(Term::mk_name(e), Term::mk_var("v0")));
    FormulaPtr good = Formula::exists("v0", Formula::eq(Term::mk_var("v0"), Term::mk_var("v0")));
    CHECK(!reflects(ctx, gs[0], Formula::conj({good, bad}), 0));
    CHECK(!reflects(ctx, gs[0], Formula::disj({good, bad}), 0));
    CHECK(reflects(ctx, gs[0], Formula::conj({good, good}), 0));
}

TEST_CASE("completeness clauses hold within the workspace bounds") {
    Workspace ws({"p"}, small_bounds());
    ValueCtx ctx(ws);
    auto gs = enumerate_ultrafilters(*ws.algebra);
    StarCompleteReport rep = check_star_complete(ctx, gs[0]);
    CHECK(rep.pass);
    CHECK(rep.ordinal_bound == ws.bounds.max_name_rank);
    CHECK(!rep.clause1.empty());
    CHECK(!rep.clause2.empty());
    for (const auto& row : rep.clause1) {
        CHECK(row.pass);
        CHECK(!row.unmatched.has_value());
        CHECK(row.beta <= rep.ordinal_bound);
        CHECK(row.names_checked > 0);
    }
    for (const auto& row : rep.clause2) {
        CHECK(row.pass);
        REQUIRE(row.beta.has_value());
        CHECK(*row.beta > row.alpha);
        CHECK(*row.beta <= rep.ordinal_bound);
    }
}
