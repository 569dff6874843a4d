// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/lmodel.hpp"

#include <algorithm>
#include <set>

#include "bvm/error.hpp"
#include "bvm/eval.hpp"

namespace bvm {

namespace {

bool is_transitive(const HfPool& pool, const std::vector<HfId>& level) {
    std::vector<HfId> sorted(level);
    std::sort(sorted.begin(), sorted.end());
    for (HfId u : level)
        for (HfId e : pool.elems(u))
            if (!std::binary_search(sorted.begin(), sorted.end(), e))
                return false;
    return true;
}

unsigned max_tilde_param_level(const TildePool& tp, const Formula& f) {
    unsigned out = 0;
    if (f.kind() == Formula::Kind::eq || f.kind() == Formula::Kind::mem ||
        f.kind() == Formula::Kind::pred) {
        const Term* terms[2] = {&f.lhs(), &f.rhs()};
        std::size_t count = f.kind() == Formula::Kind::pred ? 1 : 2;
        for (std::size_t i = 0; i < count; ++i)
            if (terms[i]->kind == Term::Kind::tilde_ref)
                out = std::max(out, tp.level(terms[i]->tilde));
        return out;
    }
    for (const FormulaPtr& kid : f.kids())
        out = std::max(out, max_tilde_param_level(tp, *kid));
    return out;
}

} // namespace

std::vector<std::vector<HfId>> build_l_hierarchy(Workspace& ws, const EnrichmentClass& h,
                                                 unsigned alpha_max) {
    if (alpha_max > ws.bounds.rank_bound)
        fail_bounds("hierarchy depth " + std::to_string(alpha_max) +
                    " above the universe rank bound");
    for (HfId x : h.extension)
        if (!ws.universe.contains(x))
            fail_input("the class " + h.predicate + " must be a subset of the ground universe");

    std::vector<std::vector<HfId>> levels{{}};
    for (unsigned a = 0; a < alpha_max; ++a) {
        const std::vector<HfId> prev = levels.back();
        std::size_t n = prev.size();
        if (n > 20)
            fail_bounds("level of " + std::to_string(n) + " sets is too large to enumerate");

        // Every subset of the level is definable from parameters alone, as a
        // disjunction of equalities. Verify each defining formula by
        // evaluation before admitting the subset.
        EvalStructure s;
        s.hf = &ws.hf;
        s.domain = prev;
        std::vector<std::vector<HfId>> subsets;
        std::vector<HfId> next;
        for (std::uint64_t pick = 0; pick < (1ull << n); ++pick) {
            std::vector<HfId> sub;
            std::vector<FormulaPtr> parts;
            for (std::size_t i = 0; i < n; ++i) {
                if (!((pick >> i) & 1))
                    continue;
                sub.push_back(prev[i]);
                parts.push_back(Formula::eq(Term::mk_var("v0"), Term::mk_set(prev[i])));
            }
            FormulaPtr phi = Formula::disj(std::move(parts));
            for (std::size_t i = 0; i < n; ++i) {
                bool holds = eval_in_structure(s, *substitute(phi, "v0", Term::mk_set(prev[i])));
                if (holds != (((pick >> i) & 1) != 0))
                    throw Error(errc::violation,
                                "defining formula disagrees with its subset at level " +
                                    std::to_string(a + 1));
            }
            next.push_back(ws.hf.intern(sub));
            subsets.push_back(std::move(sub));
        }

        std::sort(next.begin(), next.end(),
                  [&](HfId x, HfId y) { return ws.hf.canon_less(x, y); });
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() != subsets.size())
            throw Error(errc::violation,
                        "distinct subsets collided at level " + std::to_string(a + 1));
        if (!is_transitive(ws.hf, next))
            throw Error(errc::violation,
                        "level " + std::to_string(a + 1) + " is not transitive");
        for (HfId u : prev)
            if (!std::binary_search(next.begin(), next.end(), u,
                                    [&](HfId x, HfId y) { return ws.hf.canon_less(x, y); }))
                throw Error(errc::violation,
                            "levels are not cumulative at " + std::to_string(a + 1));

        // Small levels are cheap enough to cross-check against the definable
        // subsets engine, one defining class at a time.
        if (n <= 4) {
            DefOptions opt;
            // 1+3n covers the disjunction of n equalities; the floor of 4
            // keeps one closed formula and its negation expressible when the
            // level below is empty or a singleton.
            opt.size_bound = std::max(4u, static_cast<unsigned>(1 + 3 * n));
            opt.max_depth = 0;
            opt.table_cap = ws.bounds.def_table_cap;
            std::set<std::vector<HfId>> got;
            EnrichmentClass h_local = mk_enrichment(ws.hf, h.predicate, h.extension);
            for (const auto& sub : definable_subsets(ws.hf, prev, &h_local, opt))
                got.insert(sub);
            for (HfId member : ws.universe.members) {
                EnrichmentClass cls = mk_enrichment(ws.hf, "member", ws.hf.elems(member));
                for (const auto& sub : definable_subsets(ws.hf, prev, &cls, opt))
                    got.insert(sub);
            }
            std::set<std::vector<HfId>> want(subsets.begin(), subsets.end());
            if (got != want)
                throw Error(errc::violation,
                            "definable subsets disagree with the powerset at level " +
                                std::to_string(a + 1));
        }

        levels.push_back(std::move(next));
    }
    return levels;
}

LModel::LModel(Workspace& ws, EnrichmentClass h, unsigned alpha_max,
               std::vector<TildeId> stratum_two)
    : m_ws(ws), m_h(std::move(h)), m_alpha_max(alpha_max) {
    if (alpha_max < 1)
        fail_bounds("the model needs at least one level");
    m_levels = build_l_hierarchy(ws, m_h, alpha_max);
    m_name_max = std::min(alpha_max, ws.bounds.max_tilde_level);
    m_pc = PrintContext{&ws.hf, ws.names.get(), ws.tildes.get(), nullptr, nullptr};

    m_strata.resize(m_name_max + 1);
    if (m_name_max >= 1)
        m_strata[1] = {ws.tildes->empty_tilde()};
    if (m_name_max >= 2) {
        for (TildeId t : stratum_two)
            if (ws.tildes->level(t) != 2)
                fail_input("stratum two may only contain level-2 names");
        std::sort(stratum_two.begin(), stratum_two.end(),
                  [&](TildeId x, TildeId y) { return ws.tildes->canon_less(x, y); });
        stratum_two.erase(std::unique(stratum_two.begin(), stratum_two.end()),
                          stratum_two.end());
        if (stratum_two.size() > ws.bounds.max_stratum)
            fail_bounds("the level-2 stratum exceeds the stratum cap");
        m_strata[2] = std::move(stratum_two);
    }

    // The interpreted strata must assemble the hierarchy levels exactly.
    for (unsigned a = 1; a <= m_name_max; ++a) {
        std::vector<HfId> got;
        for (TildeId t : m_strata[a])
            got.push_back(interpret(t));
        std::sort(got.begin(), got.end(),
                  [&](HfId x, HfId y) { return ws.hf.canon_less(x, y); });
        got.erase(std::unique(got.begin(), got.end()), got.end());
        if (got != m_levels[a])
            throw Error(errc::violation, "interpreted name stratum " + std::to_string(a) +
                                             " does not assemble its level");
    }
}

std::vector<TildeId> LModel::stratum_names() const {
    std::vector<TildeId> out;
    for (unsigned a = 1; a < m_strata.size(); ++a)
        out.insert(out.end(), m_strata[a].begin(), m_strata[a].end());
    return out;
}

bool LModel::pred_truth(const std::string& pred, HfId x) const {
    if (pred == m_h.predicate)
        return m_h.contains(x);
    const EnrichmentClass* e = m_ws.enrichment(pred);
    if (!e)
        fail_input("predicate " + pred + " is not declared");
    return e->contains(x);
}

HfId LModel::interpret(TildeId t) {
    auto it = m_ih.find(t);
    if (it != m_ih.end())
        return it->second;
    unsigned lvl = m_ws.tildes->level(t);
    if (lvl > m_name_max)
        fail_bounds("tilde name of level " + std::to_string(lvl) +
                    " is above the model's strata");
    HfId out = hf_empty;
    if (lvl >= 2) {
        const std::vector<TildeId>& prev = m_strata[lvl - 1];
        const std::vector<FormulaPtr>& asg = m_ws.tildes->assignment(t);
        if (asg.size() != prev.size())
            fail_input("tilde assignment does not cover the previous stratum");
        EvalStructure s;
        s.hf = &m_ws.hf;
        s.domain = m_levels[lvl - 1];
        s.pred_holds = [this](const std::string& p, HfId x) { return pred_truth(p, x); };
        s.tilde_value = [this](TildeId z) { return interpret(z); };
        std::vector<HfId> elems;
        for (std::size_t j = 0; j < prev.size(); ++j)
            if (eval_in_structure(s, *asg[j]))
                elems.push_back(interpret(prev[j]));
        out = m_ws.hf.intern(std::move(elems));
    }
    m_ih.emplace(t, out);
    return out;
}

FormulaPtr LModel::expand(unsigned alpha, const FormulaPtr& f) {
    if (alpha >= m_strata.size())
        fail_bounds("stratum index " + std::to_string(alpha) +
                    " is above the model's name strata");
    switch (f->kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
    case Formula::Kind::pred:
        return f;
    case Formula::Kind::neg:
        return Formula::neg(expand(alpha, f->kids()[0]));
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
        std::vector<FormulaPtr> parts;
        parts.reserve(f->kids().size());
        for (const FormulaPtr& kid : f->kids())
            parts.push_back(expand(alpha, kid));
        return f->kind() == Formula::Kind::conj ? Formula::conj(std::move(parts))
                                                : Formula::disj(std::move(parts));
    }
    case Formula::Kind::exists: {
        std::vector<FormulaPtr> parts;
        parts.reserve(m_strata[alpha].size());
        for (TildeId a : m_strata[alpha])
            parts.push_back(expand(alpha, substitute(f->kids()[0], f->var(), Term::mk_tilde(a))));
        return Formula::disj(std::move(parts));
    }
    }
    fail_input("expand: bad formula");
}

BForm::Ref LModel::asn(unsigned alpha, const FormulaPtr& sentence) {
    if (!sentence->is_sentence())
        fail_input("assignment takes a sentence, not an open formula");
    if (max_tilde_param_level(*m_ws.tildes, *sentence) > alpha)
        fail_input("assignment parameter above stratum " + std::to_string(alpha));
    return canonical(*expand(alpha, sentence));
}

BForm::Ref LModel::canonical(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
    case Formula::Kind::pred: {
        std::string label = print_formula(f, m_pc);
        if (m_atom_truth.find(label) == m_atom_truth.end())
            m_atom_truth.emplace(label, atom_truth(f));
        return m_bf.var(label);
    }
    case Formula::Kind::neg:
        return m_bf.complement(canonical(*f.kids()[0]));
    case Formula::Kind::conj: {
        BForm::Ref acc = BForm::one;
        for (const FormulaPtr& kid : f.kids())
            acc = m_bf.meet(acc, canonical(*kid));
        return acc;
    }
    case Formula::Kind::disj: {
        BForm::Ref acc = BForm::zero;
        for (const FormulaPtr& kid : f.kids())
            acc = m_bf.join(acc, canonical(*kid));
        return acc;
    }
    case Formula::Kind::exists:
        fail_input("canonical form: quantifier in a quantifier-free sentence");
    }
    fail_input("canonical form: bad formula");
}

bool LModel::atom_truth(const Formula& atom) {
    auto value = [this](const Term& t) -> HfId {
        if (t.kind != Term::Kind::tilde_ref)
            fail_input("atomic sentences interpret tilde-name terms only");
        return interpret(t.tilde);
    };
    switch (atom.kind()) {
    case Formula::Kind::eq:
        return value(atom.lhs()) == value(atom.rhs());
    case Formula::Kind::mem:
        return m_ws.hf.contains(value(atom.rhs()), value(atom.lhs()));
    case Formula::Kind::pred:
        return pred_truth(atom.pred(), value(atom.lhs()));
    default:
        fail_input("not an atomic sentence");
    }
}

const BFormName& LModel::translate(TildeId t) {
    auto it = m_translations.find(t);
    if (it != m_translations.end())
        return it->second;
    unsigned lvl = m_ws.tildes->level(t);
    if (lvl > m_name_max)
        fail_bounds("tilde name of level " + std::to_string(lvl) +
                    " is above the model's strata");
    BFormName n;
    n.level = lvl;
    if (lvl >= 2) {
        const std::vector<TildeId>& prev = m_strata[lvl - 1];
        const std::vector<FormulaPtr>& asg = m_ws.tildes->assignment(t);
        if (asg.size() != prev.size())
            fail_input("tilde assignment does not cover the previous stratum");
        n.values.reserve(asg.size());
        for (const FormulaPtr& f : asg)
            n.values.push_back(asn(lvl - 1, f));
    }
    return m_translations.emplace(t, std::move(n)).first->second;
}

HfId LModel::interpret_translated(TildeId t) {
    auto it = m_itr.find(t);
    if (it != m_itr.end())
        return it->second;
    const BFormName& n = translate(t);
    std::vector<HfId> elems;
    if (n.level >= 2) {
        const std::vector<TildeId>& prev = m_strata[n.level - 1];
        for (std::size_t j = 0; j < n.values.size(); ++j)
            if (in_ultrafilter(n.values[j]))
                elems.push_back(interpret_translated(prev[j]));
    }
    HfId out = m_ws.hf.intern(std::move(elems));
    m_itr.emplace(t, out);
    return out;
}

bool LModel::in_ultrafilter(BForm::Ref r) const {
    return m_bf.eval(r, [this](const std::string& label) {
        auto it = m_atom_truth.find(label);
        if (it == m_atom_truth.end())
            fail_input("sentence mentions an atom the model has not interpreted: " + label);
        return it->second;
    });
}

bool HUltrafilter::contains(BForm::Ref r) const {
    if (!model)
        fail_input("ultrafilter handle without a model");
    return model->in_ultrafilter(r);
}

std::vector<TildeId> slot_sentence_battery(Workspace& ws, const std::string& h_pred,
                                           unsigned max_size) {
    PrintContext pc{&ws.hf, ws.names.get(), ws.tildes.get(), nullptr, nullptr};

    std::vector<Term> terms = {Term::mk_tilde(ws.tildes->empty_tilde()), Term::mk_var("v0"),
                               Term::mk_var("v1")};
    std::vector<std::string> preds;
    for (const EnrichmentClass& e : ws.enrichments)
        preds.push_back(e.predicate);
    if (std::find(preds.begin(), preds.end(), h_pred) == preds.end())
        preds.push_back(h_pred);

    std::map<unsigned, std::vector<FormulaPtr>> layers;
    std::set<std::string> seen;
    std::size_t admitted = 0;
    auto admit = [&](const FormulaPtr& f) {
        if (f->size() > max_size)
            return;
        if (!seen.insert(print_formula(*f, pc)).second)
            return;
        if (++admitted > 200000)
            fail_bounds("slot-sentence enumeration blew past its work cap");
        layers[f->size()].push_back(f);
    };

    for (const std::string& p : preds)
        for (const Term& t : terms)
            admit(Formula::predicate(p, t));
    for (const Term& a : terms)
        for (const Term& b : terms) {
            admit(Formula::eq(a, b));
            admit(Formula::mem(a, b));
        }

    for (unsigned size = 3; size <= max_size; ++size) {
        for (const FormulaPtr& f : layers[size - 1]) {
            admit(Formula::neg(f));
            for (const std::string& v : f->free_vars())
                admit(Formula::exists(v, f));
        }
        if (size >= 5) {
            for (unsigned sa = 2; sa + 2 <= size - 1; ++sa) {
                unsigned sb = size - 1 - sa;
                for (const FormulaPtr& fa : layers[sa])
                    for (const FormulaPtr& fb : layers[sb]) {
                        admit(Formula::conj({fa, fb}));
                        admit(Formula::disj({fa, fb}));
                    }
            }
        }
    }

    std::set<TildeId> ids;
    for (const auto& [size, layer] : layers)
        for (const FormulaPtr& f : layer)
            if (f->is_sentence())
                ids.insert(ws.tildes->mk_tilde(2, {f}, pc));
    if (ids.size() > ws.bounds.max_stratum)
        fail_bounds("the level-2 stratum exceeds the stratum cap");

    std::vector<TildeId> out(ids.begin(), ids.end());
    std::sort(out.begin(), out.end(),
              [&](TildeId x, TildeId y) { return ws.tildes->canon_less(x, y); });
    return out;
}

MhReport check_mh_equality(LModel& model, const std::vector<TildeId>& tildes) {
    MhReport rep;
    const HfPool& hf = model.workspace().hf;
    for (TildeId t : tildes) {
        MhRow row;
        row.tilde = t;
        row.direct = model.interpret(t);
        row.translated = model.interpret_translated(t);
        row.pass = row.direct == row.translated;
        rep.direct_universe.push_back(row.direct);
        rep.translated_universe.push_back(row.translated);
        rep.rows.push_back(row);
    }
    auto canon = [&](std::vector<HfId>& xs) {
        std::sort(xs.begin(), xs.end(), [&](HfId a, HfId b) { return hf.canon_less(a, b); });
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    };
    canon(rep.direct_universe);
    canon(rep.translated_universe);
    rep.universes_match = rep.direct_universe == rep.translated_universe;
    rep.pass = rep.universes_match;
    for (const MhRow& row : rep.rows)
        rep.pass = rep.pass && row.pass;
    return rep;
}

} // namespace bvm
