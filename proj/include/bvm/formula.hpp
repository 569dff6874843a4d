// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bvm/hf.hpp"
#include "bvm/ids.hpp"

namespace bvm {

class NamePool;
class TildePool;

// Terms of the language: variables and three kinds of constants (ground
// sets, names, tilde names). Which constants are legal depends on the
// evaluation context, not on the syntax.
struct Term {
    enum class Kind { variable, set_ref, name_ref, tilde_ref };
    Kind kind = Kind::variable;
    std::string var;
    HfId set = 0;
    NameId name = 0;
    TildeId tilde = 0;

    static Term mk_var(std::string v);
    static Term mk_set(HfId s);
    static Term mk_name(NameId n);
    static Term mk_tilde(TildeId t);

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Negation-and-junction language with a single primitive quantifier
// (exists); the universal quantifier is parsed as sugar. Conjunction and
// disjunction are n-ary; the empty conjunction is truth and the empty
// disjunction is falsity.
//
// Formula size is the measure used by every size bound in this project:
// equality and membership atoms are 3, a predicate atom is 2, negation and
// quantification add 1, an n-ary junction is 1 plus the sum of its parts.
class Formula {
public:
    enum class Kind { eq, mem, pred, neg, conj, disj, exists };

    static FormulaPtr eq(Term a, Term b);
    static FormulaPtr mem(Term a, Term b);
    static FormulaPtr predicate(std::string p, Term t);
    static FormulaPtr neg(FormulaPtr f);
    static FormulaPtr conj(std::vector<FormulaPtr> fs);
    static FormulaPtr disj(std::vector<FormulaPtr> fs);
    static FormulaPtr exists(std::string var, FormulaPtr body);
    static FormulaPtr truth() { return conj({}); }
    static FormulaPtr falsity() { return disj({}); }

    Kind kind() const { return m_kind; }
    const Term& lhs() const { return m_lhs; }
    const Term& rhs() const { return m_rhs; }
    const std::string& pred() const { return m_pred; }
    const std::vector<FormulaPtr>& kids() const { return m_kids; }
    const std::string& var() const { return m_var; }

    unsigned size() const { return m_size; }
    bool quantifier_free() const { return m_qf; }
    std::set<std::string> free_vars() const;
    bool is_sentence() const { return free_vars().empty(); }

private:
    Formula() = default;

    Kind m_kind = Kind::conj;
    Term m_lhs, m_rhs;
    std::string m_pred;
    std::vector<FormulaPtr> m_kids;
    std::string m_var;
    unsigned m_size = 0;
    bool m_qf = true;
};

bool is_quantifier_free(const Formula& f);
bool equal(const Formula& a, const Formula& b);

// Replaces free occurrences of `var` by `repl`. The callers only ever
// substitute constant terms, so variable capture cannot arise; substituting
// a variable term under a binder of the same spelling is rejected.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& repl);

struct ParseContext {
    HfPool* hf = nullptr;    // set literals and check(...) need these two
    NamePool* names = nullptr;
    const std::map<std::string, NameId>* named_names = nullptr;
    const std::map<std::string, TildeId>* named_tildes = nullptr;
    std::set<std::string> predicates;
};

// Grammar (whitespace-insensitive, C-style identifiers):
//   formula  := 'not' '(' formula ')'
//             | 'and' '(' [formula,*] ')' | 'or' '(' [formula,*] ')'
//             | 'exists' VAR '.' formula | 'forall' VAR '.' formula
//             | PRED '(' term ')' | term '=' term | term 'in' term
//   term     := 'check' '(' setlit ')' | 'name' ':' ID | 'name' '{' entries '}'
//             | 'tilde' ':' ID | setlit | ID
//   setlit   := '{' [setlit,*] '}'
//   entries  := [term '->' elem,*],  elem := '[' ID* ']'
// Bare identifiers resolve to bound variables first, then to declared names
// or tilde names, and otherwise denote variables.
FormulaPtr parse_formula(const std::string& text, const ParseContext& ctx);

// Term-level entry point for workspace files ("check({})", "name:n1", ...).
Term parse_term(const std::string& text, const ParseContext& ctx);

struct PrintContext {
    const HfPool* hf = nullptr;
    const NamePool* names = nullptr;
    const TildePool* tildes = nullptr;
    const std::map<std::string, NameId>* named_names = nullptr;
    const std::map<std::string, TildeId>* named_tildes = nullptr;
};

// Canonical rendering; reparsing a rendered formula in the same workspace
// yields an equal formula. Name constants without a declared alias are
// rendered structurally as name literals.
std::string print_term(const Term& t, const PrintContext& ctx);
std::string print_formula(const Formula& f, const PrintContext& ctx);

} // namespace bvm
