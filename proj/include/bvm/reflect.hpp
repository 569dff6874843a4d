// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bvm/values.hpp"

namespace bvm {

// Filled in when an existential formula fails to reflect: at level `beta` no
// admissible `gamma` exists; the recorded witness got value in the filter at
// stratum `gamma` under the recorded parameters, but no stratum-`alpha` name
// does.
struct ReflectFailure {
    unsigned beta = 0;
    unsigned gamma = 0;
    NameId witness = 0;
    std::vector<std::pair<std::string, NameId>> params;
};

// The reflection predicate: quantifier-free formulas reflect everywhere,
// negation passes through, junctions reflect when all parts do, and an
// existential reflects when its body does and every higher level has a
// cofinal level whose filter-accepted witnesses have counterparts down at
// `alpha`. The ordinal quantifiers of that last clause are confined to
// (alpha, bounds.max_name_rank]; callers should report that bound with the
// verdict.
bool reflects(ValueCtx& ctx, const Ultrafilter& g, const FormulaPtr& f, unsigned alpha,
              ReflectFailure* why = nullptr);

struct StarCompleteReport {
    // One row per name-domain absorption level: every name whose domain is
    // the whole stratum `alpha` found an equal-mod-filter partner of rank at
    // most `beta`.
    struct DomainRow {
        unsigned alpha = 0;
        unsigned beta = 0;
        std::size_t names_checked = 0;
        bool pass = true;
        std::optional<NameId> unmatched;
    };
    // One row per (formula, alpha): the least level above `alpha` where the
    // formula reflects, within the ordinal bound.
    struct ReflectRow {
        std::string formula;
        unsigned alpha = 0;
        std::optional<unsigned> beta;
        bool pass = true;
    };
    std::vector<DomainRow> clause1;
    std::vector<ReflectRow> clause2;
    unsigned ordinal_bound = 0;
    unsigned formula_size_bound = 0;
    bool pass = true;
};

// Both completeness clauses, checked exhaustively within the workspace
// bounds: domain absorption for every enumerable stratum, and cofinal
// reflection for the whole variable-only formula battery.
StarCompleteReport check_star_complete(ValueCtx& ctx, const Ultrafilter& g);

// Every formula over variables v0..v{max_vars-1} up to the size measure
// bound: equality/membership atoms, the generic predicate when asked,
// negation, junctions of two or three parts, and non-vacuous existentials.
// Canonical order (size, then rendering), structurally deduplicated.
std::vector<FormulaPtr> formula_battery(unsigned max_size, unsigned max_vars, bool with_g);

} // namespace bvm
