// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/reflect.hpp"

#include <algorithm>
#include <set>

#include "bvm/error.hpp"

namespace bvm {

namespace {

// The witness-transfer half of the existential clause, for one gamma: if
// some stratum-gamma witness puts the body in the filter under parameters
// from stratum alpha, some stratum-alpha witness must as well.
bool transfer_ok(ValueCtx& ctx, const Ultrafilter& g, const FormulaPtr& psi,
                 const std::string& var0, const std::vector<std::string>& params,
                 unsigned alpha, unsigned gamma, ReflectFailure* why) {
    Workspace& ws = ctx.workspace();
    const auto& s_alpha = ws.name_stratum(alpha);
    const auto& s_gamma = ws.name_stratum(gamma);

    std::vector<std::size_t> idx(params.size(), 0);
    while (true) {
        FormulaPtr with_params = psi;
        for (std::size_t i = 0; i < params.size(); ++i)
            with_params = substitute(with_params, params[i], Term::mk_name(s_alpha[idx[i]]));

        NameId offending = 0;
        bool have_high_witness = false;
        for (NameId b : s_gamma) {
            FormulaPtr inst = substitute(with_params, var0, Term::mk_name(b));
            if (g.contains(ctx.value_alpha(*inst, gamma))) {
                have_high_witness = true;
                offending = b;
                break;
            }
        }
        if (have_high_witness) {
            bool have_low_witness = false;
            for (NameId a : s_alpha) {
                FormulaPtr inst = substitute(with_params, var0, Term::mk_name(a));
                if (g.contains(ctx.value_alpha(*inst, alpha))) {
                    have_low_witness = true;
                    break;
                }
            }
            if (!have_low_witness) {
                if (why) {
                    why->gamma = gamma;
                    why->witness = offending;
                    why->params.clear();
                    for (std::size_t i = 0; i < params.size(); ++i)
                        why->params.emplace_back(params[i], s_alpha[idx[i]]);
                }
                return false;
            }
        }

        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == s_alpha.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return true;
}

} // namespace

bool reflects(ValueCtx& ctx, const Ultrafilter& g, const FormulaPtr& f, unsigned alpha,
              ReflectFailure* why) {
    if (f->quantifier_free()) return true;
    switch (f->kind()) {
    case Formula::Kind::neg:
        return reflects(ctx, g, f->kids()[0], alpha, why);
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        for (const FormulaPtr& kid : f->kids())
            if (!reflects(ctx, g, kid, alpha, why)) return false;
        return true;
    case Formula::Kind::exists: {
        const FormulaPtr& psi = f->kids()[0];
        if (!reflects(ctx, g, psi, alpha, why)) return false;
        auto free = f->free_vars();
        std::vector<std::string> params(free.begin(), free.end());
        const unsigned bound = ctx.workspace().bounds.max_name_rank;
        for (unsigned beta = alpha + 1; beta < bound; ++beta) {
            bool found_gamma = false;
            for (unsigned gamma = beta + 1; gamma <= bound; ++gamma) {
                if (!reflects(ctx, g, psi, gamma, nullptr)) continue;
                if (transfer_ok(ctx, g, psi, f->var(), params, alpha, gamma, why)) {
                    found_gamma = true;
                    break;
                }
            }
            if (!found_gamma) {
                if (why) why->beta = beta;
                return false;
            }
        }
        return true;
    }
    default:
        fail_input("reflects: bad formula");
    }
}

StarCompleteReport check_star_complete(ValueCtx& ctx, const Ultrafilter& g) {
    Workspace& ws = ctx.workspace();
    StarCompleteReport report;
    report.ordinal_bound = ws.bounds.max_name_rank;
    report.formula_size_bound = std::min(ws.bounds.max_formula_size, 8u);

    // Clause 1. A name with domain = stratum alpha has rank alpha+1, so it
    // sits in stratum alpha+1 and the sweep is a filter over that stratum;
    // the match search still walks the cumulative strata from the bottom so
    // the reported rank is the least one.
    for (unsigned alpha = 0; alpha + 1 <= report.ordinal_bound; ++alpha) {
        const auto& below = ws.name_stratum(alpha);
        const auto& layer = ws.name_stratum(alpha + 1);
        StarCompleteReport::DomainRow row;
        row.alpha = alpha;
        for (NameId a : layer) {
            if (ws.names->entries(a).size() != below.size()) continue;
            ++row.names_checked;
            bool matched = false;
            for (NameId b : layer) {
                if (g.contains(ctx.value_atomic(AtomKind::eq, a, b))) {
                    row.beta = std::max(row.beta, ws.names->rank(b));
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                row.pass = false;
                row.unmatched = a;
                break;
            }
        }
        report.pass = report.pass && row.pass;
        report.clause1.push_back(std::move(row));
    }

    // Clause 2. The battery has no name constants, so every formula is legal
    // at every level.
    const bool with_g = ws.algebra->atom_count() <= ValueCtx::max_encoded_atoms;
    for (const FormulaPtr& f : formula_battery(report.formula_size_bound, 2, with_g)) {
        std::string rendered = print_formula(*f, ws.print_context());
        for (unsigned alpha = 0; alpha < report.ordinal_bound; ++alpha) {
            StarCompleteReport::ReflectRow row;
            row.formula = rendered;
            row.alpha = alpha;
            for (unsigned beta = alpha + 1; beta <= report.ordinal_bound; ++beta) {
                if (reflects(ctx, g, f, beta)) {
                    row.beta = beta;
                    break;
                }
            }
            row.pass = row.beta.has_value();
            report.pass = report.pass && row.pass;
            report.clause2.push_back(std::move(row));
        }
    }
    return report;
}

std::vector<FormulaPtr> formula_battery(unsigned max_size, unsigned max_vars, bool with_g) {
    std::vector<std::string> vars;
    for (unsigned i = 0; i < max_vars; ++i) vars.push_back("v" + std::to_string(i));

    std::vector<std::vector<FormulaPtr>> by_size(max_size + 1);
    std::set<std::string> seen;
    PrintContext pc;
    auto admit = [&](const FormulaPtr& f) {
        if (f->size() > max_size) return;
        if (seen.insert(print_formula(*f, pc)).second) by_size[f->size()].push_back(f);
    };

    if (max_size >= 2 && with_g)
        for (const auto& v : vars) admit(Formula::predicate("G", Term::mk_var(v)));
    if (max_size >= 3)
        for (const auto& a : vars)
            for (const auto& b : vars) {
                admit(Formula::eq(Term::mk_var(a), Term::mk_var(b)));
                admit(Formula::mem(Term::mk_var(a), Term::mk_var(b)));
            }

    for (unsigned size = 3; size <= max_size; ++size) {
        for (const FormulaPtr& f : by_size[size - 1]) {
            admit(Formula::neg(f));
            for (const auto& v : vars)
                if (f->free_vars().count(v)) admit(Formula::exists(v, f));
        }
        // Junctions of two or three parts; deeper nesting shows up through
        // the parts themselves.
        for (unsigned sa = 2; sa + 2 + 1 <= size; ++sa) {
            for (const FormulaPtr& a : by_size[sa])
                for (const FormulaPtr& b : by_size[size - 1 - sa]) {
                    admit(Formula::conj({a, b}));
                    admit(Formula::disj({a, b}));
                }
        }
        for (unsigned sa = 2; sa + 4 + 1 <= size; ++sa)
            for (unsigned sb = 2; sa + sb + 2 + 1 <= size; ++sb)
                for (const FormulaPtr& a : by_size[sa])
                    for (const FormulaPtr& b : by_size[sb])
                        for (const FormulaPtr& c : by_size[size - 1 - sa - sb]) {
                            admit(Formula::conj({a, b, c}));
                            admit(Formula::disj({a, b, c}));
                        }
    }

    std::vector<FormulaPtr> out;
    for (const auto& layer : by_size)
        for (const FormulaPtr& f : layer) out.push_back(f);
    std::stable_sort(out.begin(), out.end(), [&](const FormulaPtr& a, const FormulaPtr& b) {
        if (a->size() != b->size()) return a->size() < b->size();
        return print_formula(*a, pc) < print_formula(*b, pc);
    });
    return out;
}

} // namespace bvm
