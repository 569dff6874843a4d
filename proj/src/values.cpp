// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/values.hpp"

#include <algorithm>
#include <cstdint>

#include "bvm/error.hpp"

namespace bvm {

namespace {

std::uint64_t pair_key(NameId x, NameId y) {
    return (std::uint64_t(x) << 32) | y;
}

NameId name_term(const Term& t) {
    if (t.kind != Term::Kind::name_ref)
        fail_input("values: term does not denote a name");
    return t.name;
}

void collect_names(const Term& t, std::vector<NameId>& out) {
    if (t.kind == Term::Kind::name_ref) out.push_back(t.name);
}

void collect_names(const Formula& f, std::vector<NameId>& out) {
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
        collect_names(f.lhs(), out);
        collect_names(f.rhs(), out);
        return;
    case Formula::Kind::pred:
        collect_names(f.lhs(), out);
        return;
    default:
        for (const FormulaPtr& kid : f.kids()) collect_names(*kid, out);
        return;
    }
}

} // namespace

std::vector<NameId> name_constants(const Formula& f) {
    std::vector<NameId> out;
    collect_names(f, out);
    return out;
}

PairMatrices compute_pair_matrices(Workspace& ws, const std::vector<NameId>& names,
                                   bool parallel) {
    PairMatrices pm;
    pm.alg = ws.algebra.get();
    pm.names = names;
    pm.n = names.size();
    if (pm.n > 8192) fail_bounds("pair matrices: name list too large");
    pm.index_of.assign(ws.names->size(), -1);
    for (std::size_t i = 0; i < pm.n; ++i) {
        NameId id = names[i];
        if (id >= pm.index_of.size() || pm.index_of[id] >= 0)
            fail_input("pair matrices: bad or duplicate name id");
        pm.index_of[id] = static_cast<std::int32_t>(i);
    }

    std::vector<unsigned> rank(pm.n);
    std::vector<const std::vector<std::pair<NameId, AtomMask>>*> ent(pm.n);
    unsigned rmax = 0;
    for (std::size_t i = 0; i < pm.n; ++i) {
        rank[i] = ws.names->rank(names[i]);
        rmax = std::max(rmax, rank[i]);
        ent[i] = &ws.names->entries(names[i]);
        for (const auto& [key, val] : *ent[i]) {
            (void)val;
            if (!pm.covers(key))
                fail_input("pair matrices: name list not closed under keys");
        }
    }

    pm.eq.assign(pm.n * pm.n, 0);
    pm.mem.assign(pm.n * pm.n, 0);

    std::vector<std::vector<std::uint32_t>> by_rank(rmax + 1);
    for (std::size_t i = 0; i < pm.n; ++i) by_rank[rank[i]].push_back(static_cast<std::uint32_t>(i));

    std::vector<std::pair<std::uint64_t, std::pair<unsigned, unsigned>>> levels;
    for (unsigned ra = 0; ra <= rmax; ++ra)
        for (unsigned rb = 0; rb <= rmax; ++rb)
            levels.push_back({gamma_index(ra, rb), {ra, rb}});
    std::sort(levels.begin(), levels.end());

    const AtomMask full = ws.algebra->full_mask();
    const std::size_t n = pm.n;
    for (const auto& level : levels) {
        const auto& rows = by_rank[level.second.first];
        const auto& cols = by_rank[level.second.second];
        // Every pair in this level only reads pairs of strictly smaller
        // level, already filled; iterations are independent.
#pragma omp parallel for schedule(dynamic, 8) if (parallel && rows.size() > 1)
        for (std::int64_t ri = 0; ri < static_cast<std::int64_t>(rows.size()); ++ri) {
            const std::size_t i = rows[static_cast<std::size_t>(ri)];
            for (const std::uint32_t j : cols) {
                AtomMask mv = 0;
                for (const auto& [t, b] : *ent[j]) {
                    if (!b) continue;
                    mv |= pm.eq[i * n + std::size_t(pm.index_of[t])] & b;
                    if (mv == full) break;
                }
                pm.mem[i * n + j] = static_cast<std::uint16_t>(mv);

                AtomMask ev = full;
                for (const auto& [t, b] : *ent[i]) {
                    ev &= static_cast<AtomMask>(~b & full) | pm.mem[std::size_t(pm.index_of[t]) * n + j];
                    if (!ev) break;
                }
                if (ev)
                    for (const auto& [t, b] : *ent[j]) {
                        ev &= static_cast<AtomMask>(~b & full) | pm.mem[std::size_t(pm.index_of[t]) * n + i];
                        if (!ev) break;
                    }
                pm.eq[i * n + j] = static_cast<std::uint16_t>(ev);
            }
        }
    }
    return pm;
}

ValueCtx::ValueCtx(Workspace& ws) : m_ws(ws) {
    for (std::size_t i = 0; i < ws.algebra->atom_count(); ++i)
        m_numerals.push_back(ws.hf.numeral(static_cast<unsigned>(i)));
    if (ws.algebra->atom_count() <= max_encoded_atoms) {
        const std::size_t count = std::size_t{1} << ws.algebra->atom_count();
        m_elem_checks.resize(count);
        for (AtomMask mask = 0; mask < count; ++mask) {
            HfId coded = encode_elem(elem_from_mask(*ws.algebra, mask));
            m_elem_checks[mask] = ws.names->check_name(ws.hf, coded);
        }
    }
    m_floor = ws.names->size();
}

void ValueCtx::refresh_floor() {
    m_floor = m_ws.names->size();
}

BoolElem ValueCtx::value_star_atomic(AtomKind k, NameId x, NameId y) const {
    const BoolAlg& alg = *m_ws.algebra;
    if (k == AtomKind::eq) return x == y ? elem_one(alg) : elem_zero(alg);
    return elem_from_mask(alg, m_ws.names->lookup(y, x).value_or(0));
}

AtomMask ValueCtx::atomic_mask(AtomKind k, NameId x, NameId y) {
    if (m_pm && m_pm->covers(x) && m_pm->covers(y))
        return k == AtomKind::eq ? m_pm->eq_mask(x, y) : m_pm->mem_mask(x, y);
    const bool memoize = x < m_floor && y < m_floor;
    auto& memo = k == AtomKind::eq ? m_eq : m_mem;
    const std::uint64_t key = pair_key(x, y);
    if (memoize) {
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    const AtomMask full = m_ws.algebra->full_mask();
    AtomMask out;
    if (k == AtomKind::mem) {
        out = 0;
        for (const auto& [t, b] : m_ws.names->entries(y)) {
            if (!b) continue;
            out |= atomic_mask(AtomKind::eq, x, t) & b;
            if (out == full) break;
        }
    } else {
        out = full;
        for (const auto& [t, b] : m_ws.names->entries(x)) {
            out &= static_cast<AtomMask>(~b & full) | atomic_mask(AtomKind::mem, t, y);
            if (!out) break;
        }
        if (out)
            for (const auto& [t, b] : m_ws.names->entries(y)) {
                out &= static_cast<AtomMask>(~b & full) | atomic_mask(AtomKind::mem, t, x);
                if (!out) break;
            }
    }
    if (memoize) memo.emplace(key, out);
    return out;
}

BoolElem ValueCtx::value_atomic(AtomKind k, NameId x, NameId y) {
    return elem_from_mask(*m_ws.algebra, atomic_mask(k, x, y));
}

BoolElem ValueCtx::qf_value(const Formula& f, bool star) {
    const BoolAlg& alg = *m_ws.algebra;
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem: {
        AtomKind k = f.kind() == Formula::Kind::eq ? AtomKind::eq : AtomKind::mem;
        NameId x = name_term(f.lhs()), y = name_term(f.rhs());
        return star ? value_star_atomic(k, x, y) : value_atomic(k, x, y);
    }
    case Formula::Kind::pred:
        if (star) fail_input("values: raw values do not interpret predicates");
        if (f.pred() != "G")
            fail_input("values: predicate " + f.pred() + " has no Boolean value");
        return value_G(name_term(f.lhs()));
    case Formula::Kind::neg:
        return complement(qf_value(*f.kids()[0], star));
    case Formula::Kind::conj: {
        BoolElem acc = elem_one(alg);
        for (const FormulaPtr& kid : f.kids()) {
            acc = meet(acc, qf_value(*kid, star));
            if (acc.is_zero()) break;
        }
        return acc;
    }
    case Formula::Kind::disj: {
        BoolElem acc = elem_zero(alg);
        for (const FormulaPtr& kid : f.kids()) {
            acc = join(acc, qf_value(*kid, star));
            if (acc.is_one()) break;
        }
        return acc;
    }
    case Formula::Kind::exists:
        fail_input("values: quantifier inside a quantifier-free value");
    }
    fail_input("values: bad formula");
}

BoolElem ValueCtx::value_star(const Formula& f) {
    return qf_value(f, true);
}

BoolElem ValueCtx::value_qf(const Formula& f) {
    return qf_value(f, false);
}

BoolElem ValueCtx::value_alpha(const Formula& f, unsigned alpha) {
    for (NameId c : name_constants(f))
        if (m_ws.names->rank(c) > alpha)
            fail_input("values: constant " + m_ws.names->repr(c) + " has rank above stratum " +
                       std::to_string(alpha));
    if (f.quantifier_free()) return value_qf(f);
    const BoolAlg& alg = *m_ws.algebra;
    switch (f.kind()) {
    case Formula::Kind::neg:
        return complement(value_alpha(*f.kids()[0], alpha));
    case Formula::Kind::conj: {
        BoolElem acc = elem_one(alg);
        for (const FormulaPtr& kid : f.kids()) {
            acc = meet(acc, value_alpha(*kid, alpha));
            if (acc.is_zero()) break;
        }
        return acc;
    }
    case Formula::Kind::disj: {
        BoolElem acc = elem_zero(alg);
        for (const FormulaPtr& kid : f.kids()) {
            acc = join(acc, value_alpha(*kid, alpha));
            if (acc.is_one()) break;
        }
        return acc;
    }
    case Formula::Kind::exists: {
        BoolElem acc = elem_zero(alg);
        for (NameId a : m_ws.name_stratum(alpha)) {
            FormulaPtr inst = substitute(f.kids()[0], f.var(), Term::mk_name(a));
            acc = join(acc, value_alpha(*inst, alpha));
            if (acc.is_one()) break;
        }
        return acc;
    }
    default:
        fail_input("values: bad formula");
    }
}

FoResult ValueCtx::value_fo(const Formula& f, unsigned alpha) {
    FoResult r;
    r.bound_stratum = alpha;
    r.value = value_alpha(f, alpha);
    r.next_value = value_alpha(f, alpha + 1);
    r.stable = r.value == r.next_value;
    return r;
}

BoolElem ValueCtx::value_G(NameId a) {
    if (m_elem_checks.empty())
        fail_bounds("values: algebra too large for the generic-predicate encoding");
    const AtomMask full = m_ws.algebra->full_mask();
    AtomMask acc = 0;
    for (AtomMask mask = 1; mask < m_elem_checks.size(); ++mask) {
        acc |= atomic_mask(AtomKind::eq, a, m_elem_checks[mask]) & mask;
        if (acc == full) break;
    }
    return elem_from_mask(*m_ws.algebra, acc);
}

HfId ValueCtx::interpret(const Ultrafilter& g, NameId x) {
    if (g.alg != m_ws.algebra.get()) fail_input("values: ultrafilter from a foreign algebra");
    const bool memoize = x < m_floor;
    const std::uint64_t key = (std::uint64_t(g.atom) << 32) | x;
    if (memoize) {
        auto it = m_interp.find(key);
        if (it != m_interp.end()) return it->second;
    }
    std::vector<HfId> elems;
    for (const auto& [t, b] : m_ws.names->entries(x))
        if (b >> g.atom & 1) elems.push_back(interpret(g, t));
    HfId out = m_ws.hf.intern(std::move(elems));
    if (memoize) m_interp.emplace(key, out);
    return out;
}

HfId ValueCtx::encode_elem(BoolElem b) {
    if (b.alg != m_ws.algebra.get()) fail_input("values: element from a foreign algebra");
    std::vector<HfId> elems;
    for (std::size_t i = 0; i < m_ws.algebra->atom_count(); ++i)
        if (b.mask >> i & 1) elems.push_back(m_ws.hf.numeral(static_cast<unsigned>(i)));
    return m_ws.hf.intern(std::move(elems));
}

std::optional<AtomMask> ValueCtx::decode_elem(HfId x) const {
    AtomMask mask = 0;
    for (HfId e : m_ws.hf.elems(x)) {
        bool matched = false;
        for (std::size_t i = 0; i < m_ws.algebra->atom_count() && !matched; ++i) {
            if (m_numerals[i] == e) {
                mask |= AtomMask{1} << i;
                matched = true;
            }
        }
        if (!matched) return std::nullopt;
    }
    return mask;
}

NameId ValueCtx::check_of_elem(BoolElem b) const {
    if (b.alg != m_ws.algebra.get()) fail_input("values: element from a foreign algebra");
    if (m_elem_checks.empty())
        fail_bounds("values: algebra too large for the generic-predicate encoding");
    return m_elem_checks[b.mask];
}

NameId ValueCtx::replacement_image_name(const FormulaPtr& phi, const std::string& var_x,
                                        const std::string& var_y, NameId big_x,
                                        unsigned beta) {
    auto fv = phi->free_vars();
    fv.erase(var_x);
    fv.erase(var_y);
    if (!fv.empty()) fail_input("replacement: stray free variable " + *fv.begin());
    if (m_ws.names->rank(big_x) > beta)
        fail_input("replacement: source name rank above the image stratum");
    const BoolAlg& alg = *m_ws.algebra;
    const AtomMask full = alg.full_mask();
    const auto& dom = m_ws.name_stratum(beta);
    std::vector<std::pair<NameId, BoolElem>> out;
    out.reserve(dom.size());
    for (NameId a : dom) {
        FormulaPtr with_y = substitute(phi, var_y, Term::mk_name(a));
        AtomMask acc = 0;
        for (const auto& [x, val] : m_ws.names->entries(big_x)) {
            (void)val;
            FormulaPtr inst = substitute(with_y, var_x, Term::mk_name(x));
            acc |= value_alpha(*inst, beta).mask & atomic_mask(AtomKind::mem, x, big_x);
            if (acc == full) break;
        }
        out.emplace_back(a, elem_from_mask(alg, acc));
    }
    return m_ws.names->mk_name(std::move(out));
}

} // namespace bvm
