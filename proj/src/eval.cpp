// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/eval.hpp"

#include <algorithm>
#include <utility>

#include "bvm/error.hpp"

namespace bvm {

bool EvalStructure::in_domain(HfId x) const {
    return std::find(domain.begin(), domain.end(), x) != domain.end();
}

namespace {

// Binding stack; later entries shadow earlier ones.
using Env = std::vector<std::pair<std::string, HfId>>;

HfId eval_term(const EvalStructure& s, const Term& t, const Env& env) {
    switch (t.kind) {
    case Term::Kind::variable:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == t.var) return it->second;
        fail_input("eval: free variable " + t.var);
    case Term::Kind::set_ref:
        return t.set;
    case Term::Kind::name_ref:
        if (!s.name_value) fail_input("eval: no denotation for name constants");
        return s.name_value(t.name);
    case Term::Kind::tilde_ref:
        if (!s.tilde_value) fail_input("eval: no denotation for tilde constants");
        return s.tilde_value(t.tilde);
    }
    fail_input("eval: bad term");
}

HfId eval_ground(const EvalStructure& s, const Term& t, const Env& env) {
    HfId x = eval_term(s, t, env);
    if (!s.in_domain(x))
        fail_input("eval: term denotes a set outside the domain: " + s.hf->repr(x));
    return x;
}

bool eval_rec(const EvalStructure& s, const Formula& f, Env& env) {
    switch (f.kind()) {
    case Formula::Kind::eq:
        return eval_ground(s, f.lhs(), env) == eval_ground(s, f.rhs(), env);
    case Formula::Kind::mem: {
        HfId x = eval_ground(s, f.lhs(), env);
        HfId y = eval_ground(s, f.rhs(), env);
        return s.hf->contains(y, x);
    }
    case Formula::Kind::pred: {
        if (!s.pred_holds) fail_input("eval: no interpretation for predicate " + f.pred());
        return s.pred_holds(f.pred(), eval_ground(s, f.lhs(), env));
    }
    case Formula::Kind::neg:
        return !eval_rec(s, *f.kids()[0], env);
    case Formula::Kind::conj:
        for (const FormulaPtr& kid : f.kids())
            if (!eval_rec(s, *kid, env)) return false;
        return true;
    case Formula::Kind::disj:
        for (const FormulaPtr& kid : f.kids())
            if (eval_rec(s, *kid, env)) return true;
        return false;
    case Formula::Kind::exists: {
        env.emplace_back(f.var(), hf_empty);
        bool found = false;
        for (HfId d : s.domain) {
            env.back().second = d;
            if (eval_rec(s, *f.kids()[0], env)) {
                found = true;
                break;
            }
        }
        env.pop_back();
        return found;
    }
    }
    fail_input("eval: bad formula");
}

} // namespace

bool eval_in_structure(const EvalStructure& s, const Formula& sentence) {
    if (!s.hf) fail_input("eval: structure has no set pool");
    Env env;
    return eval_rec(s, sentence, env);
}

} // namespace bvm
