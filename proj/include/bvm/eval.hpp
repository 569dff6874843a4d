// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bvm/formula.hpp"
#include "bvm/hf.hpp"

namespace bvm {

// A finite structure for the set language: a domain of ground sets with real
// membership, unary predicates, and optional resolvers that give name and
// tilde constants a denotation (e.g. an interpretation map). Quantifiers
// range over `domain`.
struct EvalStructure {
    const HfPool* hf = nullptr;
    std::vector<HfId> domain;
    std::function<bool(const std::string&, HfId)> pred_holds;
    std::function<HfId(NameId)> name_value;
    std::function<HfId(TildeId)> tilde_value;

    bool in_domain(HfId x) const;
};

// Tarskian satisfaction. Errors (errc::input) on free variables, constants
// denoting sets outside the domain, unresolvable constants, or predicates
// without a `pred_holds` callback.
bool eval_in_structure(const EvalStructure& s, const Formula& sentence);

} // namespace bvm
