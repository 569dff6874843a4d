// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace bvm {

Workspace::Workspace(std::vector<std::string> atoms, WorkspaceBounds b)
    : algebra(mk_powerset_algebra(std::move(atoms))), bounds(b) {
    universe = build_hf_universe(hf, bounds.rank_bound);
    names = std::make_unique<NamePool>(algebra);
    tildes = std::make_unique<TildePool>();
}

const std::vector<NameId>& Workspace::name_stratum(unsigned alpha) {
    while (m_strata.size() <= alpha)
        m_strata.push_back(
            stratum(*names, static_cast<unsigned>(m_strata.size()), bounds.max_stratum));
    return m_strata[alpha];
}

unsigned Workspace::max_alpha() const {
    const std::size_t n_elems = std::size_t(1) << algebra->atom_count();
    unsigned alpha = 0;
    while (alpha < 8 && stratum_size(n_elems, alpha + 1, bounds.max_stratum).has_value())
        ++alpha;
    return alpha;
}

const EnrichmentClass* Workspace::enrichment(const std::string& pred) const {
    for (const auto& e : enrichments)
        if (e.predicate == pred)
            return &e;
    return nullptr;
}

ParseContext Workspace::parse_context(bool with_generic_pred) {
    ParseContext ctx;
    ctx.hf = &hf;
    ctx.names = names.get();
    ctx.named_names = &name_index;
    ctx.named_tildes = &tilde_index;
    for (const auto& e : enrichments)
        ctx.predicates.insert(e.predicate);
    if (with_generic_pred)
        ctx.predicates.insert("G");
    return ctx;
}

PrintContext Workspace::print_context() const {
    PrintContext ctx;
    ctx.hf = &hf;
    ctx.names = names.get();
    ctx.tildes = tildes.get();
    ctx.named_names = &name_index;
    ctx.named_tildes = &tilde_index;
    return ctx;
}

namespace {

struct Line {
    std::string key, value;
    std::size_t lineno = 0;
};

[[noreturn]] void err_at(const std::string& origin, std::size_t lineno, const std::string& msg) {
    fail_input(origin + ":" + std::to_string(lineno) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

unsigned parse_unsigned(const std::string& origin, const Line& l) {
    const std::string v = trim(l.value);
    if (v.empty() || !std::all_of(v.begin(), v.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        err_at(origin, l.lineno, "expected a number for '" + l.key + "', got '" + v + "'");
    return static_cast<unsigned>(std::stoul(v));
}

bool valid_ident(const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

// value form: tilde LEVEL { idx -> "formula", ... }
void parse_tilde_decl(Workspace& ws, const std::string& origin, const Line& l,
                      const std::string& alias) {
    const std::string& v = l.value;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i])))
            ++i;
    };
    auto fail_here = [&](const std::string& msg) -> void { err_at(origin, l.lineno, msg); };

    skip_ws();
    if (v.compare(i, 5, "tilde") != 0)
        fail_here("tilde declarations start with 'tilde'");
    i += 5;
    skip_ws();
    std::size_t d0 = i;
    while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i])))
        ++i;
    if (d0 == i)
        fail_here("expected a tilde level");
    unsigned level = static_cast<unsigned>(std::stoul(v.substr(d0, i - d0)));
    if (level != 2)
        fail_here("workspace files can declare level 2 tilde names only; deeper levels "
                  "need an enumerated lower stratum");
    if (level > ws.bounds.max_tilde_level)
        throw Error(errc::bounds, origin + ":" + std::to_string(l.lineno) +
                                      ": tilde level exceeds max_tilde_level");
    skip_ws();
    if (i >= v.size() || v[i] != '{')
        fail_here("expected '{'");
    ++i;

    std::map<unsigned, std::string> by_index;
    for (;;) {
        skip_ws();
        if (i < v.size() && v[i] == '}') {
            ++i;
            break;
        }
        std::size_t k0 = i;
        while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i])))
            ++i;
        if (k0 == i)
            fail_here("expected a slot index");
        unsigned idx = static_cast<unsigned>(std::stoul(v.substr(k0, i - k0)));
        skip_ws();
        if (v.compare(i, 2, "->") != 0)
            fail_here("expected '->'");
        i += 2;
        skip_ws();
        if (i >= v.size() || v[i] != '"')
            fail_here("tilde slot formulas are quoted strings");
        ++i;
        std::size_t q0 = i;
        while (i < v.size() && v[i] != '"')
            ++i;
        if (i >= v.size())
            fail_here("unterminated formula string");
        std::string text = v.substr(q0, i - q0);
        ++i;
        if (!by_index.emplace(idx, text).second)
            fail_here("slot " + std::to_string(idx) + " assigned twice");
        skip_ws();
        if (i < v.size() && v[i] == ',') {
            ++i;
            continue;
        }
        if (i < v.size() && v[i] == '}') {
            ++i;
            break;
        }
        fail_here("expected ',' or '}'");
    }
    skip_ws();
    if (i != v.size())
        fail_here("trailing input after tilde declaration");

    // level 2 assigns over the single level-1 name
    if (by_index.size() != 1 || !by_index.count(0))
        fail_here("a level 2 tilde name assigns exactly slot 0");

    ParseContext pc = ws.parse_context();
    std::vector<FormulaPtr> assignment;
    for (const auto& [idx, text] : by_index) {
        FormulaPtr f = parse_formula(text, pc);
        if (f->size() > ws.bounds.max_formula_size)
            throw Error(errc::bounds, origin + ":" + std::to_string(l.lineno) +
                                          ": tilde formula exceeds max_formula_size");
        assignment.push_back(std::move(f));
    }
    TildeId id = ws.tildes->mk_tilde(level, std::move(assignment), ws.print_context());
    ws.tilde_decls.emplace_back(alias, id);
    ws.tilde_index.emplace(alias, id);
}

} // namespace

std::unique_ptr<Workspace> parse_workspace(const std::string& text, const std::string& origin) {
    std::map<std::string, std::vector<Line>> sections;
    {
        std::istringstream in(text);
        std::string raw;
        std::string section;
        std::size_t lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            std::string line = trim(raw);
            if (line.empty() || line[0] == '#')
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    err_at(origin, lineno, "unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section != "universe" && section != "algebra" && section != "enrich" &&
                    section != "names" && section != "tilde")
                    err_at(origin, lineno, "unknown section [" + section + "]");
                sections.try_emplace(section);
                continue;
            }
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                err_at(origin, lineno, "expected 'key = value'");
            if (section.empty())
                err_at(origin, lineno, "entry outside any section");
            Line l;
            l.key = trim(line.substr(0, eq));
            l.value = trim(line.substr(eq + 1));
            l.lineno = lineno;
            if (l.key.empty())
                err_at(origin, lineno, "empty key");
            sections[section].push_back(std::move(l));
        }
    }

    WorkspaceBounds bounds;
    if (auto it = sections.find("universe"); it != sections.end()) {
        for (const Line& l : it->second) {
            if (l.key == "rank_bound")
                bounds.rank_bound = parse_unsigned(origin, l);
            else if (l.key == "max_name_rank")
                bounds.max_name_rank = parse_unsigned(origin, l);
            else if (l.key == "max_stratum")
                bounds.max_stratum = parse_unsigned(origin, l);
            else if (l.key == "max_formula_size")
                bounds.max_formula_size = parse_unsigned(origin, l);
            else if (l.key == "max_tilde_level")
                bounds.max_tilde_level = parse_unsigned(origin, l);
            else
                err_at(origin, l.lineno, "unknown bound '" + l.key + "'");
        }
    }

    std::vector<std::string> atoms;
    {
        auto it = sections.find("algebra");
        if (it == sections.end())
            fail_input(origin + ": missing [algebra] section");
        for (const Line& l : it->second) {
            if (l.key != "atoms")
                err_at(origin, l.lineno, "unknown algebra key '" + l.key + "'");
            std::istringstream as(l.value);
            std::string a;
            while (as >> a)
                atoms.push_back(a);
        }
        if (atoms.empty())
            fail_input(origin + ": [algebra] declares no atoms");
    }

    auto ws = std::make_unique<Workspace>(atoms, bounds);

    if (auto it = sections.find("enrich"); it != sections.end()) {
        for (const Line& l : it->second) {
            if (!valid_ident(l.key))
                err_at(origin, l.lineno, "invalid predicate name '" + l.key + "'");
            if (l.key == "G")
                err_at(origin, l.lineno, "'G' is reserved for the generic predicate");
            if (ws->enrichment(l.key))
                err_at(origin, l.lineno, "predicate '" + l.key + "' declared twice");
            ParseContext pc = ws->parse_context();
            Term t;
            try {
                t = parse_term(l.value, pc);
            } catch (const Error& e) {
                err_at(origin, l.lineno, e.what());
            }
            if (t.kind != Term::Kind::set_ref)
                err_at(origin, l.lineno, "enrichment extensions are set literals");
            std::vector<HfId> ext = ws->hf.elems(t.set);
            for (HfId x : ext)
                if (!ws->universe.contains(x))
                    err_at(origin, l.lineno, "enrichment member " + ws->hf.repr(x) +
                                                 " lies outside the universe");
            ws->enrichments.push_back(mk_enrichment(ws->hf, l.key, std::move(ext)));
        }
    }

    if (auto it = sections.find("names"); it != sections.end()) {
        for (const Line& l : it->second) {
            if (!valid_ident(l.key))
                err_at(origin, l.lineno, "invalid name alias '" + l.key + "'");
            if (ws->name_index.count(l.key) || ws->tilde_index.count(l.key))
                err_at(origin, l.lineno, "alias '" + l.key + "' declared twice");
            ParseContext pc = ws->parse_context();
            Term t;
            try {
                t = parse_term(l.value, pc);
            } catch (const Error& e) {
                if (e.code() == errc::bounds)
                    throw;
                err_at(origin, l.lineno, e.what());
            }
            if (t.kind != Term::Kind::name_ref)
                err_at(origin, l.lineno, "'" + l.key + "' does not denote a name");
            if (ws->names->rank(t.name) > ws->bounds.max_name_rank)
                throw Error(errc::bounds,
                            origin + ":" + std::to_string(l.lineno) + ": name rank " +
                                std::to_string(ws->names->rank(t.name)) +
                                " exceeds max_name_rank " +
                                std::to_string(ws->bounds.max_name_rank));
            ws->name_decls.emplace_back(l.key, t.name);
            ws->name_index.emplace(l.key, t.name);
        }
    }

    if (auto it = sections.find("tilde"); it != sections.end()) {
        for (const Line& l : it->second) {
            if (!valid_ident(l.key))
                err_at(origin, l.lineno, "invalid tilde alias '" + l.key + "'");
            if (ws->name_index.count(l.key) || ws->tilde_index.count(l.key))
                err_at(origin, l.lineno, "alias '" + l.key + "' declared twice");
            parse_tilde_decl(*ws, origin, l, l.key);
        }
    }

    return ws;
}

std::unique_ptr<Workspace> load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail_input("cannot open workspace file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_workspace(buf.str(), path);
}

} // namespace bvm
