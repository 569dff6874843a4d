// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "bvm/quotient.hpp"
#include "bvm/values.hpp"
#include "bvm/workspace.hpp"

using namespace bvm;

namespace {

WorkspaceBounds small_bounds() {
    WorkspaceBounds b;
    b.rank_bound = 3;
    b.max_name_rank = 2;
    return b;
}

// union-find partition from pairwise equality values, as an independent
// reference for the partition the quotient builds
std::vector<std::size_t> uf_partition(ValueCtx& ctx, const Ultrafilter& g,
                                      const std::vector<NameId>& names) {
    std::vector<std::size_t> parent(names.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (g.contains(ctx.value_atomic(AtomKind::eq, names[i], names[j])))
                parent[find(i)] = find(j);
    for (std::size_t i = 0; i < names.size(); ++i)
        parent[i] = find(i);
    return parent;
}

} // namespace

TEST_CASE("induced quotient merges names with filter-accepted equality") {
    Workspace ws({"p", "q"}, small_bounds());
    ValueCtx ctx(ws);
    std::vector<NameId> names = ws.name_stratum(1);
    REQUIRE(names.size() == 5);

    for (const Ultrafilter& g : enumerate_ultrafilters(*ws.algebra)) {
        QuotientModel q = quotient_model(ctx, g, names, QuotientMode::induced);
        CHECK(q.equivalence_ok);
        CHECK(q.mode == QuotientMode::induced);

        // partition agrees with the union-find reference
        std::vector<std::size_t> ref = uf_partition(ctx, g, names);
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = 0; j < names.size(); ++j)
                CHECK((q.class_of[i] == q.class_of[j]) == (ref[i] == ref[j]));

        // edges read off the membership value of representatives
        for (std::size_t a = 0; a < q.classes.size(); ++a)
            for (std::size_t b = 0; b < q.classes.size(); ++b) {
                bool want = g.contains(ctx.value_atomic(AtomKind::mem, q.classes[a].front(),
                                                        q.classes[b].front()));
                CHECK(q.edge(a, b) == want);
            }
    }
}

TEST_CASE("the rank one stratum collapses to two classes per filter") {
    Workspace ws({"p", "q"}, small_bounds());
    ValueCtx ctx(ws);
    std::vector<NameId> names = ws.name_stratum(1);
    NameId e = ws.names->empty_name();
    NameId yp = ws.names->mk_name({{e, elem_atom(*ws.algebra, 0)}});

    auto gs = enumerate_ultrafilters(*ws.algebra);
    QuotientModel q = quotient_model(ctx, gs[0], names, QuotientMode::induced);
    REQUIRE(q.classes.size() == 2);
    // the empty class and the singleton-of-empty class
    CHECK(q.classes[0].front() == e);
    CHECK(q.classes[0].size() == 3); // e, the zeroed name, and the q-valued name
    CHECK(q.classes[1].size() == 2); // the p-valued and the one-valued name
    CHECK(q.class_of[std::find(names.begin(), names.end(), yp) - names.begin()] == 1);
    // membership between the two classes, reflexive nowhere
    CHECK(q.edge(0, 1));
    CHECK(!q.edge(1, 0));
    CHECK(!q.edge(0, 0));
    CHECK(!q.edge(1, 1));
    CHECK(check_extensionality(q).pass);
}

TEST_CASE("star quotient keeps every name separate") {
    Workspace ws({"p"}, small_bounds());
    ValueCtx ctx(ws);
    std::vector<NameId> names = ws.name_stratum(1);
    auto gs = enumerate_ultrafilters(*ws.algebra);

    QuotientModel q = quotient_model(ctx, gs[0], names, QuotientMode::star);
    CHECK(q.equivalence_ok);
    CHECK(q.classes.size() == names.size());
    for (const auto& cls : q.classes)
        CHECK(cls.size() == 1);
}

TEST_CASE("the documented witness pair separates the two modes") {
    Workspace ws({"p", "q"}, small_bounds());
    ValueCtx ctx(ws);
    NameId e = ws.names->empty_name();
    NameId zeroed = ws.names->mk_name({{e, elem_zero(*ws.algebra)}});
    std::vector<NameId> pair{e, zeroed};
    auto gs = enumerate_ultrafilters(*ws.algebra);

    // raw mode: two classes, both with empty membership, so extensionality fails
    QuotientModel star = quotient_model(ctx, gs[0], pair, QuotientMode::star);
    REQUIRE(star.classes.size() == 2);
    ExtensionalityReport bad = check_extensionality(star);
    CHECK(!bad.pass);
    REQUIRE(bad.violation.has_value());
    CHECK(*bad.violation == std::pair<std::size_t, std::size_t>{0, 1});

    // induced mode: the pair merges and the violation disappears
    QuotientModel ind = quotient_model(ctx, gs[0], pair, QuotientMode::induced);
    CHECK(ind.classes.size() == 1);
    CHECK(check_extensionality(ind).pass);
}
