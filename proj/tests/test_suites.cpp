// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <memory>
#include <string>

#include "bvm/checks.hpp"
#include "bvm/workspace.hpp"

// The verification suites run exhaustively inside the workspace bounds, so a
// clean report on a one-atom workspace is a real statement, not a smoke
// puff. The acceptance binary runs the same suites on larger workspaces.

using namespace bvm;

namespace {

std::unique_ptr<Workspace> small_ws() {
    WorkspaceBounds b;
    b.rank_bound = 3;
    b.max_name_rank = 2;
    b.max_formula_size = 6;
    return std::make_unique<Workspace>(std::vector<std::string>{"p"}, b);
}

bool has_claim(const Report& rep, const std::string& needle) {
    for (const ReportLine& l : rep.lines())
        if (l.claim.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_CASE("model laws") {
    auto ws = small_ws();
    Report rep;
    check_bvm_laws(*ws, rep);
    CHECK(rep.clean());
    CHECK(rep.lines().size() >= 4); // one record per law at least
}

TEST_CASE("quotient truth tracks filter membership") {
    auto ws = small_ws();
    Report rep;
    check_forcing_theorem(*ws, 4, rep);
    CHECK(rep.clean());
    CHECK(has_claim(rep, "atomic"));
}

TEST_CASE("accepted sums expose accepted summands") {
    Report rep;
    check_witness_hypothesis(2, rep);
    CHECK(rep.clean());
    CHECK(!rep.lines().empty());
}

TEST_CASE("interpretation is an isomorphism on the quotient") {
    auto ws = small_ws();
    Report rep;
    check_isomorphism(*ws, rep);
    CHECK(rep.clean());
}

TEST_CASE("the two evaluation modes differ on the witness pair") {
    auto ws = small_ws();
    Report rep;
    check_extensionality_modes(*ws, rep);
    CHECK(rep.clean());
}

TEST_CASE("check names interpret back to their sets") {
    auto ws = small_ws();
    Report rep;
    check_name_absoluteness(*ws, rep);
    CHECK(rep.clean());
}

TEST_CASE("stratified values are monotone by polarity and mostly stable") {
    auto ws = small_ws();
    Report rep;
    check_fo_stability(*ws, 1, rep);
    CHECK(rep.clean());
    CHECK(has_claim(rep, "never shrink"));
    CHECK(has_claim(rep, "never grow"));
    CHECK(has_claim(rep, "stable"));
}

TEST_CASE("reflection closure and the bottom-level counterexample") {
    auto ws = small_ws();
    Report rep;
    check_reflection(*ws, 2, rep);
    CHECK(rep.clean());
    CHECK(has_claim(rep, "fails"));
}

TEST_CASE("completeness of the raw structure") {
    auto ws = small_ws();
    Report rep;
    check_star_completeness(*ws, rep);
    CHECK(rep.clean());
}

TEST_CASE("generic predicate values") {
    auto ws = small_ws();
    Report rep;
    check_generic_predicate(*ws, rep);
    CHECK(rep.clean());
}

TEST_CASE("set construction instances") {
    auto ws = small_ws();
    Report rep;
    check_zfc_instances(*ws, rep);
    CHECK(rep.clean());
    CHECK(has_claim(rep, "pair"));
    CHECK(has_claim(rep, "union"));
    CHECK(has_claim(rep, "replacement"));
    CHECK(has_claim(rep, "choice"));
}

TEST_CASE("translation equality on one class") {
    auto ws = small_ws();
    Report rep;
    EnrichmentClass h = mk_enrichment(ws->hf, "H", {hf_empty});
    check_translation(*ws, h, 5, rep);
    CHECK(rep.clean());
}

TEST_CASE("translation equality across every class and rank bound") {
    Report rep;
    check_translation_sweep(2, 5, rep);
    CHECK(rep.clean());
    CHECK(rep.lines().size() >= 6); // 2 + 4 classes swept
}

TEST_CASE("sentence algebra ultrafilter laws") {
    auto ws = small_ws();
    Report rep;
    EnrichmentClass h = mk_enrichment(ws->hf, "H", {hf_empty});
    check_sentence_ultrafilter(*ws, h, 5, rep);
    CHECK(rep.clean());
}

TEST_CASE("canonical forms against the truth table oracle") {
    Report rep;
    check_canonical_forms(rep);
    CHECK(rep.clean());
    CHECK(!rep.lines().empty());
}
