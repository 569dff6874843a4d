// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "bvm/lmodel.hpp"
#include "bvm/workspace.hpp"

using namespace bvm;

namespace {

std::unique_ptr<Workspace> mk_ws() {
    WorkspaceBounds b;
    b.rank_bound = 3;
    b.max_name_rank = 2;
    return std::make_unique<Workspace>(std::vector<std::string>{"p"}, b);
}

} // namespace

TEST_CASE("hierarchy levels are the iterated powersets of the ground start") {
    auto ws = mk_ws();
    EnrichmentClass h = mk_enrichment(ws->hf, "H", {hf_empty});
    auto levels = build_l_hierarchy(*ws, h, 3);
    REQUIRE(levels.size() == 4);
    CHECK(levels[0].empty());
    CHECK(levels[1] == std::vector<HfId>{hf_empty});
    REQUIRE(levels[2].size() == 2);
    CHECK(levels[3].size() == 4);
    // cumulative and canonical
    for (unsigned a = 1; a < levels.size(); ++a) {
        std::set<HfId> prev(levels[a - 1].begin(), levels[a - 1].end());
        for (HfId x : levels[a - 1])
            CHECK(std::count(levels[a].begin(), levels[a].end(), x) == 1);
        for (std::size_t i = 1; i < levels[a].size(); ++i)
            CHECK(ws->hf.canon_less(levels[a][i - 1], levels[a][i]));
        // every member is a subset of the previous level
        for (HfId x : levels[a])
            for (HfId e : ws->hf.elems(x))
                CHECK(prev.count(e));
    }
}

TEST_CASE("slot sentences intern as level two names") {
    auto ws = mk_ws();
    std::vector<TildeId> battery = slot_sentence_battery(*ws, "H", 6);
    CHECK(battery.size() > 4);
    std::set<TildeId> uniq(battery.begin(), battery.end());
    CHECK(uniq.size() == battery.size());
    for (TildeId t : battery) {
        CHECK(ws->tildes->level(t) == 2);
        REQUIRE(ws->tildes->assignment(t).size() == 1);
        CHECK(ws->tildes->assignment(t)[0]->is_sentence());
    }
}

TEST_CASE("the assembled model interprets its strata onto the levels") {
    auto ws = mk_ws();
    EnrichmentClass h = mk_enrichment(ws->hf, "H", {hf_empty});
    LModel model(*ws, h, 2, slot_sentence_battery(*ws, "H", 6));

    CHECK(model.levels().size() == 3);
    CHECK(model.name_level_max() == 2);
    CHECK(model.h().predicate == "H");

    // the level-1 stratum is the single empty name, interpreting to the
    // empty set
    REQUIRE(model.strata().size() >= 2);
    REQUIRE(model.strata()[1].size() == 1);
    CHECK(model.interpret(model.strata()[1][0]) == hf_empty);

    // every level-2 name lands in level 2, and level 2 is covered
    std::set<HfId> hit;
    for (TildeId t : model.strata()[2]) {
        HfId v = model.interpret(t);
        hit.insert(v);
        CHECK(std::count(model.levels()[2].begin(), model.levels()[2].end(), v) == 1);
    }
    CHECK(hit.size() == model.levels()[2].size());

    // stratum_names lists both strata in canonical order
    std::vector<TildeId> all = model.stratum_names();
    CHECK(all.size() == model.strata()[1].size() + model.strata()[2].size());
}

TEST_CASE("assignments canonicalize sentences against the model") {
    auto ws = mk_ws();
    EnrichmentClass h = mk_enrichment(ws->hf, "H", {hf_empty});
    LModel model(*ws, h, 2, slot_sentence_battery(*ws, "H", 6));

    Term t0 = Term::mk_tilde(ws->tildes->empty_tilde());
    FormulaPtr self = Formula::eq(t0, t0);
    FormulaPtr taut = Formula::exists("v0", Formula::eq(Term::mk_var("v0"), Term::mk_var("v0")));
    FormulaPtr none = Formula::exists("v0", Formula::mem(Term::mk_var("v0"), t0));

    // the assignment commutes with negation
    for (const FormulaPtr& f : {self, taut, none})
        CHECK(model.asn(1, Formula::neg(f)) == model.bform().complement(model.asn(1, f)));

    // an existential at a stratum is the join of its instances
    CHECK(model.asn(1, taut) == model.canonical(*Formula::eq(t0, t0)));

    // truth in the model picks the ultrafilter side
    CHECK(model.in_ultrafilter(model.asn(1, self)));
    CHECK(model.in_ultrafilter(model.asn(1, taut)));
    CHECK(!model.in_ultrafilter(model.asn(1, none)));
    CHECK(model.atom_truth(*self));

    // dichotomy on the sentence algebra
    HUltrafilter u = model.ultrafilter();
    CHECK(u.contains(BForm::one));
    CHECK(!u.contains(BForm::zero));
    for (const FormulaPtr& f : {self, taut, none}) {
        BForm::Ref r = model.asn(1, f);
        CHECK(u.contains(r) != u.contains(model.bform().complement(r)));
    }
}

TEST_CASE("translation and direct interpretation coincide") {
    auto ws = mk_ws();
    EnrichmentClass h = mk_enrichment(ws->hf, "H", {hf_empty});
    LModel model(*ws, h, 2, slot_sentence_battery(*ws, "H", 6));

    for (TildeId t : model.stratum_names()) {
        const BFormName& tr = model.translate(t);
        CHECK(tr.level == ws->tildes->level(t));
        CHECK(model.interpret_translated(t) == model.interpret(t));
    }

    MhReport rep = check_mh_equality(model, model.stratum_names());
    CHECK(rep.pass);
    CHECK(rep.universes_match);
    CHECK(rep.direct_universe == rep.translated_universe);
    for (const MhRow& row : rep.rows) {
        CHECK(row.pass);
        CHECK(row.direct == row.translated);
    }
    // the assembled universe is the top hierarchy level
    CHECK(rep.direct_universe == model.levels().back());
}
