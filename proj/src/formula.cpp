// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/formula.hpp"

#include <algorithm>
#include <cctype>

#include "bvm/names.hpp"
#include "bvm/tilde.hpp"

namespace bvm {

Term Term::mk_var(std::string v) {
    Term t;
    t.kind = Kind::variable;
    t.var = std::move(v);
    return t;
}

Term Term::mk_set(HfId s) {
    Term t;
    t.kind = Kind::set_ref;
    t.set = s;
    return t;
}

Term Term::mk_name(NameId n) {
    Term t;
    t.kind = Kind::name_ref;
    t.name = n;
    return t;
}

Term Term::mk_tilde(TildeId tl) {
    Term t;
    t.kind = Kind::tilde_ref;
    t.tilde = tl;
    return t;
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case Term::Kind::variable: return a.var == b.var;
    case Term::Kind::set_ref: return a.set == b.set;
    case Term::Kind::name_ref: return a.name == b.name;
    case Term::Kind::tilde_ref: return a.tilde == b.tilde;
    }
    return false;
}

FormulaPtr Formula::eq(Term a, Term b) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->m_kind = Kind::eq;
    f->m_lhs = std::move(a);
    f->m_rhs = std::move(b);
    f->m_size = 3;
    return f;
}

FormulaPtr Formula::mem(Term a, Term b) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->m_kind = Kind::mem;
    f->m_lhs = std::move(a);
    f->m_rhs = std::move(b);
    f->m_size = 3;
    return f;
}

FormulaPtr Formula::predicate(std::string p, Term t) {
    if (p.empty())
        fail_input("empty predicate symbol");
    auto f = std::shared_ptr<Formula>(new Formula());
    f->m_kind = Kind::pred;
    f->m_pred = std::move(p);
    f->m_lhs = std::move(t);
    f->m_size = 2;
    return f;
}

FormulaPtr Formula::neg(FormulaPtr k) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->m_kind = Kind::neg;
    f->m_size = 1 + k->m_size;
    f->m_qf = k->m_qf;
    f->m_kids.push_back(std::move(k));
    return f;
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> fs) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->m_kind = Kind::conj;
    f->m_size = 1;
    for (const auto& k : fs) {
        f->m_size += k->m_size;
        f->m_qf = f->m_qf && k->m_qf;
    }
    f->m_kids = std::move(fs);
    return f;
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> fs) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->m_kind = Kind::disj;
    f->m_size = 1;
    for (const auto& k : fs) {
        f->m_size += k->m_size;
        f->m_qf = f->m_qf && k->m_qf;
    }
    f->m_kids = std::move(fs);
    return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
    if (var.empty())
        fail_input("quantifier needs a variable");
    auto f = std::shared_ptr<Formula>(new Formula());
    f->m_kind = Kind::exists;
    f->m_var = std::move(var);
    f->m_size = 1 + body->m_size;
    f->m_qf = false;
    f->m_kids.push_back(std::move(body));
    return f;
}

static void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                          std::set<std::string>& out) {
    auto add_term = [&](const Term& t) {
        if (t.kind == Term::Kind::variable && !bound.count(t.var))
            out.insert(t.var);
    };
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
        add_term(f.lhs());
        add_term(f.rhs());
        break;
    case Formula::Kind::pred:
        add_term(f.lhs());
        break;
    case Formula::Kind::neg:
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        for (const auto& k : f.kids())
            free_vars_rec(*k, bound, out);
        break;
    case Formula::Kind::exists: {
        bool fresh = bound.insert(f.var()).second;
        free_vars_rec(*f.kids()[0], bound, out);
        if (fresh)
            bound.erase(f.var());
        break;
    }
    }
}

std::set<std::string> Formula::free_vars() const {
    std::set<std::string> bound, out;
    free_vars_rec(*this, bound, out);
    return out;
}

bool is_quantifier_free(const Formula& f) { return f.quantifier_free(); }

bool equal(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind() || a.size() != b.size())
        return false;
    switch (a.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Formula::Kind::pred:
        return a.pred() == b.pred() && a.lhs() == b.lhs();
    case Formula::Kind::exists:
        if (a.var() != b.var())
            return false;
        [[fallthrough]];
    case Formula::Kind::neg:
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        if (a.kids().size() != b.kids().size())
            return false;
        for (std::size_t i = 0; i < a.kids().size(); ++i)
            if (!equal(*a.kids()[i], *b.kids()[i]))
                return false;
        return true;
    }
    return false;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& repl) {
    auto sub_term = [&](const Term& t) {
        if (t.kind == Term::Kind::variable && t.var == var)
            return repl;
        return t;
    };
    switch (f->kind()) {
    case Formula::Kind::eq:
        return Formula::eq(sub_term(f->lhs()), sub_term(f->rhs()));
    case Formula::Kind::mem:
        return Formula::mem(sub_term(f->lhs()), sub_term(f->rhs()));
    case Formula::Kind::pred:
        return Formula::predicate(f->pred(), sub_term(f->lhs()));
    case Formula::Kind::neg:
        return Formula::neg(substitute(f->kids()[0], var, repl));
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
        std::vector<FormulaPtr> kids;
        kids.reserve(f->kids().size());
        for (const auto& k : f->kids())
            kids.push_back(substitute(k, var, repl));
        return f->kind() == Formula::Kind::conj ? Formula::conj(std::move(kids))
                                                : Formula::disj(std::move(kids));
    }
    case Formula::Kind::exists:
        if (f->var() == var)
            return f; // occurrences below are bound
        if (repl.kind == Term::Kind::variable && repl.var == f->var())
            fail_input("substitution would capture variable '" + repl.var + "'");
        return Formula::exists(f->var(), substitute(f->kids()[0], var, repl));
    }
    fail_input("substitute: unknown formula kind");
}

// --- lexer -----------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { ident, punct, arrow, end };
    Kind kind = Kind::end;
    std::string text;
    char punct = 0;
    std::size_t pos = 0;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Token::Kind::arrow, "->", 0, i});
            i += 2;
            continue;
        }
        if (std::string("(){}[],.=:").find(c) != std::string::npos) {
            out.push_back({Token::Kind::punct, std::string(1, c), c, i});
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Kind::ident, s.substr(i, j - i), 0, i});
            i = j;
            continue;
        }
        fail_input("unexpected character '" + std::string(1, c) + "' at offset " +
                   std::to_string(i));
    }
    out.push_back({Token::Kind::end, "", 0, s.size()});
    return out;
}

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> r = {"and", "or",    "not",  "exists", "forall",
                                            "check", "name", "tilde", "in"};
    return r;
}

struct Parser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    const ParseContext& ctx;
    std::vector<std::string> bound;

    const Token& peek(std::size_t ahead = 0) const {
        return toks[std::min(pos + ahead, toks.size() - 1)];
    }

    [[noreturn]] void err(const std::string& what) const {
        fail_input("parse error at offset " + std::to_string(peek().pos) + ": " + what);
    }

    const Token& next() {
        const Token& t = toks[pos];
        if (t.kind != Token::Kind::end)
            ++pos;
        return t;
    }

    bool accept_punct(char c) {
        if (peek().kind == Token::Kind::punct && peek().punct == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c))
            err("expected '" + std::string(1, c) + "'");
    }

    std::string expect_ident(const char* what) {
        if (peek().kind != Token::Kind::ident)
            err(std::string("expected ") + what);
        return next().text;
    }

    bool is_bound(const std::string& v) const {
        return std::find(bound.begin(), bound.end(), v) != bound.end();
    }

    bool at_ident(const char* w) const {
        return peek().kind == Token::Kind::ident && peek().text == w;
    }

    HfId parse_setlit() {
        if (!ctx.hf)
            err("set literals are not available in this context");
        expect_punct('{');
        std::vector<HfId> elems;
        if (!accept_punct('}')) {
            for (;;) {
                elems.push_back(parse_setlit());
                if (accept_punct('}'))
                    break;
                expect_punct(',');
            }
        }
        return ctx.hf->intern(std::move(elems));
    }

    BoolElem parse_elem() {
        if (!ctx.names)
            err("boolean element literals need a name pool");
        expect_punct('[');
        std::vector<std::string> labels;
        while (peek().kind == Token::Kind::ident)
            labels.push_back(next().text);
        expect_punct(']');
        return elem_from_labels(ctx.names->algebra(), labels);
    }

    Term parse_name_literal() {
        if (!ctx.names)
            err("name literals are not available in this context");
        expect_punct('{');
        std::vector<std::pair<NameId, BoolElem>> entries;
        if (!accept_punct('}')) {
            for (;;) {
                Term key = parse_term();
                if (key.kind != Term::Kind::name_ref)
                    err("name literal keys must denote names");
                if (peek().kind != Token::Kind::arrow)
                    err("expected '->'");
                next();
                entries.emplace_back(key.name, parse_elem());
                if (accept_punct('}'))
                    break;
                expect_punct(',');
            }
        }
        return Term::mk_name(ctx.names->mk_name(std::move(entries)));
    }

    Term parse_term() {
        if (peek().kind == Token::Kind::punct && peek().punct == '{')
            return Term::mk_set(parse_setlit());
        if (peek().kind != Token::Kind::ident)
            err("expected a term");
        if (at_ident("check")) {
            next();
            if (!ctx.names)
                err("check(...) is not available in this context");
            expect_punct('(');
            HfId s = parse_setlit();
            expect_punct(')');
            return Term::mk_name(ctx.names->check_name(*ctx.hf, s));
        }
        if (at_ident("name")) {
            next();
            if (accept_punct(':')) {
                std::string id = expect_ident("a declared name after 'name:'");
                if (!ctx.named_names || !ctx.named_names->count(id))
                    err("unknown name '" + id + "'");
                return Term::mk_name(ctx.named_names->at(id));
            }
            return parse_name_literal();
        }
        if (at_ident("tilde")) {
            next();
            expect_punct(':');
            std::string id = expect_ident("a declared tilde name after 'tilde:'");
            if (!ctx.named_tildes || !ctx.named_tildes->count(id))
                err("unknown tilde name '" + id + "'");
            return Term::mk_tilde(ctx.named_tildes->at(id));
        }
        std::string id = next().text;
        if (reserved_words().count(id))
            err("'" + id + "' cannot be used as a term");
        if (is_bound(id))
            return Term::mk_var(id);
        if (ctx.named_names && ctx.named_names->count(id))
            return Term::mk_name(ctx.named_names->at(id));
        if (ctx.named_tildes && ctx.named_tildes->count(id))
            return Term::mk_tilde(ctx.named_tildes->at(id));
        return Term::mk_var(id);
    }

    FormulaPtr parse_formula() {
        if (at_ident("not")) {
            next();
            expect_punct('(');
            FormulaPtr f = parse_formula();
            expect_punct(')');
            return Formula::neg(std::move(f));
        }
        if (at_ident("and") || at_ident("or")) {
            bool isAnd = peek().text == "and";
            next();
            expect_punct('(');
            std::vector<FormulaPtr> kids;
            if (!accept_punct(')')) {
                for (;;) {
                    kids.push_back(parse_formula());
                    if (accept_punct(')'))
                        break;
                    expect_punct(',');
                }
            }
            return isAnd ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
        }
        if (at_ident("exists") || at_ident("forall")) {
            bool isForall = peek().text == "forall";
            next();
            std::string v = expect_ident("a variable");
            if (reserved_words().count(v))
                err("'" + v + "' cannot be a variable");
            expect_punct('.');
            bound.push_back(v);
            FormulaPtr body = parse_formula();
            bound.pop_back();
            if (isForall)
                return Formula::neg(Formula::exists(v, Formula::neg(std::move(body))));
            return Formula::exists(v, std::move(body));
        }
        // predicate application
        if (peek().kind == Token::Kind::ident && ctx.predicates.count(peek().text) &&
            peek(1).kind == Token::Kind::punct && peek(1).punct == '(') {
            std::string p = next().text;
            expect_punct('(');
            Term t = parse_term();
            expect_punct(')');
            return Formula::predicate(std::move(p), std::move(t));
        }
        if (peek().kind == Token::Kind::ident && !reserved_words().count(peek().text) &&
            peek(1).kind == Token::Kind::punct && peek(1).punct == '(')
            err("unknown predicate '" + peek().text + "'");
        Term a = parse_term();
        if (accept_punct('='))
            return Formula::eq(std::move(a), parse_term());
        if (at_ident("in")) {
            next();
            return Formula::mem(std::move(a), parse_term());
        }
        err("expected '=' or 'in'");
    }
};

} // namespace

FormulaPtr parse_formula(const std::string& text, const ParseContext& ctx) {
    auto toks = lex(text);
    Parser p{toks, 0, ctx, {}};
    FormulaPtr f = p.parse_formula();
    if (p.peek().kind != Token::Kind::end)
        p.err("trailing input");
    return f;
}

Term parse_term(const std::string& text, const ParseContext& ctx) {
    auto toks = lex(text);
    Parser p{toks, 0, ctx, {}};
    Term t = p.parse_term();
    if (p.peek().kind != Token::Kind::end)
        p.err("trailing input");
    return t;
}

// --- printer ---------------------------------------------------------------

namespace {

template <typename Id>
const std::string* find_alias(const std::map<std::string, Id>* named, Id id) {
    if (!named)
        return nullptr;
    for (const auto& [alias, nid] : *named)
        if (nid == id)
            return &alias;
    return nullptr;
}

} // namespace

std::string print_term(const Term& t, const PrintContext& ctx) {
    switch (t.kind) {
    case Term::Kind::variable:
        return t.var;
    case Term::Kind::set_ref:
        return ctx.hf ? ctx.hf->repr(t.set) : "set#" + std::to_string(t.set);
    case Term::Kind::name_ref:
        if (const std::string* a = find_alias(ctx.named_names, t.name))
            return "name:" + *a;
        return ctx.names ? ctx.names->repr(t.name) : "name#" + std::to_string(t.name);
    case Term::Kind::tilde_ref:
        if (const std::string* a = find_alias(ctx.named_tildes, t.tilde))
            return "tilde:" + *a;
        return ctx.tildes ? ctx.tildes->repr(t.tilde) : "tilde#" + std::to_string(t.tilde);
    }
    return "?";
}

std::string print_formula(const Formula& f, const PrintContext& ctx) {
    switch (f.kind()) {
    case Formula::Kind::eq:
        return print_term(f.lhs(), ctx) + " = " + print_term(f.rhs(), ctx);
    case Formula::Kind::mem:
        return print_term(f.lhs(), ctx) + " in " + print_term(f.rhs(), ctx);
    case Formula::Kind::pred:
        return f.pred() + "(" + print_term(f.lhs(), ctx) + ")";
    case Formula::Kind::neg:
        return "not(" + print_formula(*f.kids()[0], ctx) + ")";
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
        std::string out = f.kind() == Formula::Kind::conj ? "and(" : "or(";
        for (std::size_t i = 0; i < f.kids().size(); ++i) {
            if (i)
                out += ", ";
            out += print_formula(*f.kids()[i], ctx);
        }
        return out + ")";
    }
    case Formula::Kind::exists:
        return "exists " + f.var() + ". " + print_formula(*f.kids()[0], ctx);
    }
    return "?";
}

} // namespace bvm
