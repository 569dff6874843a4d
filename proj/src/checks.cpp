// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/checks.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bvm/bform.hpp"
#include "bvm/eval.hpp"
#include "bvm/lmodel.hpp"
#include "bvm/quotient.hpp"
#include "bvm/reflect.hpp"
#include "bvm/values.hpp"

namespace bvm {

namespace {

// Square bit matrix, 64-bit packed rows. Used to close the model laws over
// all triples and quadruples by row composition instead of literal loops.
struct BitMat {
    std::size_t n = 0, w = 0;
    std::vector<std::uint64_t> bits;

    explicit BitMat(std::size_t n_) : n(n_), w((n_ + 63) / 64), bits(n_ * w, 0) {}
    void set(std::size_t i, std::size_t j) {
        bits[i * w + (j >> 6)] |= std::uint64_t(1) << (j & 63);
    }
    bool get(std::size_t i, std::size_t j) const {
        return (bits[i * w + (j >> 6)] >> (j & 63)) & 1;
    }
    const std::uint64_t* row(std::size_t i) const { return bits.data() + i * w; }
};

template <typename F>
void for_bits(const std::uint64_t* row, std::size_t w, F f) {
    for (std::size_t wi = 0; wi < w; ++wi) {
        std::uint64_t word = row[wi];
        while (word != 0) {
            f(wi * 64 + std::size_t(std::countr_zero(word)));
            word &= word - 1;
        }
    }
}

std::string filter_str(const Ultrafilter& g) { return "U_" + g.label(); }

std::string count_str(std::uint64_t n, const std::string& what) {
    return std::to_string(n) + " " + what;
}

std::string elem_str(const BoolAlg& alg, AtomMask m) {
    return to_string(elem_from_mask(alg, m));
}

std::string set_list_str(const HfPool& hf, const std::vector<HfId>& xs) {
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += hf.repr(xs[i]);
    }
    return out + "}";
}

// Interpretations of every listed name under one ultrafilter.
std::vector<HfId> image_vector(ValueCtx& ctx, const Ultrafilter& g,
                               const std::vector<NameId>& names) {
    std::vector<HfId> img(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) img[i] = ctx.interpret(g, names[i]);
    return img;
}

// First name per distinct interpretation, in canonical name order.
std::vector<std::size_t> representative_positions(const Workspace&, const std::vector<HfId>& img) {
    std::vector<std::size_t> reps;
    std::set<HfId> seen;
    for (std::size_t i = 0; i < img.size(); ++i)
        if (seen.insert(img[i]).second) reps.push_back(i);
    return reps;
}

std::vector<HfId> sorted_unique_sets(const HfPool& hf, std::vector<HfId> xs) {
    std::sort(xs.begin(), xs.end(), [&](HfId a, HfId b) { return hf.canon_less(a, b); });
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

unsigned quantifier_depth(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
    case Formula::Kind::pred:
        return 0;
    case Formula::Kind::exists: {
        return 1 + quantifier_depth(*f.kids()[0]);
    }
    default: {
        unsigned d = 0;
        for (const FormulaPtr& kid : f.kids()) d = std::max(d, quantifier_depth(*kid));
        return d;
    }
    }
}

// Which polarities the quantifiers of `f` occur at. A larger witness stratum
// can only grow an existential's value, so a sentence whose quantifiers all
// sit under an even number of negations is monotone upward in the stratum,
// all-odd ones downward, and mixed ones need not be monotone at all.
void quantifier_polarities(const Formula& f, bool positive, bool& has_pos, bool& has_neg) {
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
    case Formula::Kind::pred:
        return;
    case Formula::Kind::neg:
        quantifier_polarities(*f.kids()[0], !positive, has_pos, has_neg);
        return;
    case Formula::Kind::exists:
        (positive ? has_pos : has_neg) = true;
        quantifier_polarities(*f.kids()[0], positive, has_pos, has_neg);
        return;
    default:
        for (const FormulaPtr& kid : f.kids())
            quantifier_polarities(*kid, positive, has_pos, has_neg);
        return;
    }
}

} // namespace

void check_bvm_laws(Workspace& ws, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    const BoolAlg& alg = *ws.algebra;
    const std::size_t n = pm.n;
    const std::size_t atoms = alg.atom_count();
    const AtomMask full = alg.full_mask();
    const std::string bound =
        "atoms=" + std::to_string(atoms) + ", all names of rank <= 2 (" + std::to_string(n) + ")";
    auto nm = [&](std::size_t i) { return ws.names->repr(names[i]); };

    {
        std::optional<std::size_t> bad;
        for (std::size_t i = 0; i < n && !bad; ++i)
            if (pm.eq[i * n + i] != full) bad = i;
        out.add("||x = x|| is one", count_str(n, "names"), "", "", !bad, bound);
        if (bad)
            out.add("||x = x|| is one", "x = " + nm(*bad), elem_str(alg, pm.eq[*bad * n + *bad]),
                     to_string(elem_one(alg)), false, bound);
    }

    {
        std::optional<std::pair<std::size_t, std::size_t>> bad;
        for (std::size_t i = 0; i < n && !bad; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (pm.eq[i * n + j] != pm.eq[j * n + i]) {
                    bad = {i, j};
                    break;
                }
        out.add("||x = y|| is symmetric", count_str(std::uint64_t(n) * n, "ordered pairs"), "", "",
                !bad, bound);
        if (bad)
            out.add("||x = y|| is symmetric", "x = " + nm(bad->first) + ", y = " + nm(bad->second),
                     elem_str(alg, pm.eq[bad->first * n + bad->second]),
                     elem_str(alg, pm.eq[bad->second * n + bad->first]), false, bound);
    }

    // Laws 3 and 4 factor through the atoms of the algebra: an inequality
    // u*v <= w of masks holds exactly when it holds bit by bit, so each law
    // becomes a relation-composition bound per atom.
    struct Tuple3 {
        std::size_t i, k, j;
    };
    struct Tuple4 {
        std::size_t v, x, y, wpos;
    };
    std::optional<Tuple3> bad3;
    std::optional<Tuple4> bad4;
    for (std::size_t a = 0; a < atoms; ++a) {
        BitMat eqm(n), mem(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if ((pm.eq[i * n + j] >> a) & 1) eqm.set(i, j);
                if ((pm.mem[i * n + j] >> a) & 1) mem.set(i, j);
            }
        const std::size_t w = eqm.w;

        // Law 3: the equality relation composed with itself stays inside
        // itself, per atom. Recover the first (x, y, z) on failure.
        std::vector<std::uint64_t> acc(w);
        for (std::size_t i = 0; i < n && !bad3; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for_bits(eqm.row(i), w, [&](std::size_t k) {
                const std::uint64_t* rk = eqm.row(k);
                for (std::size_t t = 0; t < w; ++t) acc[t] |= rk[t];
            });
            const std::uint64_t* ri = eqm.row(i);
            bool over = false;
            for (std::size_t t = 0; t < w && !over; ++t) over = (acc[t] & ~ri[t]) != 0;
            if (!over) continue;
            for (std::size_t k = 0; k < n && !bad3; ++k) {
                if (!eqm.get(i, k)) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (eqm.get(k, j) && !eqm.get(i, j)) {
                        bad3 = Tuple3{i, k, j};
                        break;
                    }
            }
        }

        // Law 4: conjugating membership by equality on both sides stays
        // inside membership, per atom. T(v,y) = exists x E(v,x) Mem(x,y).
        BitMat tmat(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::uint64_t* tv = tmat.bits.data() + v * w;
            for_bits(eqm.row(v), w, [&](std::size_t x) {
                const std::uint64_t* rx = mem.row(x);
                for (std::size_t t = 0; t < w; ++t) tv[t] |= rx[t];
            });
        }
        for (std::size_t v = 0; v < n && !bad4; ++v) {
            std::fill(acc.begin(), acc.end(), 0);
            for_bits(tmat.row(v), w, [&](std::size_t y) {
                const std::uint64_t* ry = eqm.row(y);
                for (std::size_t t = 0; t < w; ++t) acc[t] |= ry[t];
            });
            const std::uint64_t* mv = mem.row(v);
            bool over = false;
            for (std::size_t t = 0; t < w && !over; ++t) over = (acc[t] & ~mv[t]) != 0;
            if (!over) continue;
            for (std::size_t x = 0; x < n && !bad4; ++x) {
                if (!eqm.get(v, x)) continue;
                for (std::size_t y = 0; y < n && !bad4; ++y) {
                    if (!mem.get(x, y)) continue;
                    for (std::size_t wp = 0; wp < n; ++wp)
                        if (eqm.get(y, wp) && !mem.get(v, wp)) {
                            bad4 = Tuple4{v, x, y, wp};
                            break;
                        }
                }
            }
        }
        if (bad3 || bad4) break;
    }

    out.add("||x = y|| * ||y = z|| <= ||x = z||",
            count_str(std::uint64_t(n) * n * n, "ordered triples"), "", "", !bad3, bound);
    if (bad3) {
        NameId x = names[bad3->i], y = names[bad3->k], z = names[bad3->j];
        BoolElem lhs = meet(elem_from_mask(alg, pm.eq_mask(x, y)),
                            elem_from_mask(alg, pm.eq_mask(y, z)));
        out.add("||x = y|| * ||y = z|| <= ||x = z||",
                "x = " + nm(bad3->i) + ", y = " + nm(bad3->k) + ", z = " + nm(bad3->j),
                to_string(lhs), elem_str(alg, pm.eq_mask(x, z)), false, bound);
    }

    out.add("||x in y|| * ||v = x|| * ||w = y|| <= ||v in w||",
            count_str(std::uint64_t(n) * n * n * n, "ordered quadruples"), "", "", !bad4, bound);
    if (bad4) {
        NameId v = names[bad4->v], x = names[bad4->x], y = names[bad4->y], wq = names[bad4->wpos];
        BoolElem lhs = meet(meet(elem_from_mask(alg, pm.mem_mask(x, y)),
                                 elem_from_mask(alg, pm.eq_mask(v, x))),
                            elem_from_mask(alg, pm.eq_mask(wq, y)));
        out.add("||x in y|| * ||v = x|| * ||w = y|| <= ||v in w||",
                "x = " + nm(bad4->x) + ", y = " + nm(bad4->y) + ", v = " + nm(bad4->v) +
                    ", w = " + nm(bad4->wpos),
                to_string(lhs), elem_str(alg, pm.mem_mask(v, wq)), false, bound);
    }
}

void check_forcing_theorem(Workspace& ws, unsigned max_size, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    const std::size_t n = names.size();
    const BoolAlg& alg = *ws.algebra;
    const std::vector<Ultrafilter> ultras = enumerate_ultrafilters(alg);
    PrintContext pc = ws.print_context();
    const std::string bound = "atoms=" + std::to_string(alg.atom_count()) +
                              ", names of rank <= 2 (" + std::to_string(n) +
                              "), sentence size <= " + std::to_string(max_size);
    const bool with_g = alg.atom_count() <= ValueCtx::max_encoded_atoms;

    struct Mismatch {
        std::string instance, lhs, rhs;
    };
    std::optional<Mismatch> bad_eq, bad_mem, bad_g, bad_rep, bad_rand;
    std::uint64_t n_eq = 0, n_mem = 0, n_g = 0, n_rep = 0, n_rand = 0;

    std::vector<FormulaPtr> battery_qf;
    for (const FormulaPtr& f : formula_battery(max_size, 3, with_g))
        if (f->quantifier_free()) battery_qf.push_back(f);

    std::mt19937 rng(20260816u);

    for (const Ultrafilter& g : ultras) {
        const std::vector<HfId> img = image_vector(ctx, g, names);

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ++n_eq;
                const bool truth = img[i] == img[j];
                const bool value = (pm.eq[i * n + j] >> g.atom) & 1;
                if (truth != value && !bad_eq)
                    bad_eq = Mismatch{"||x = y|| with x = " + ws.names->repr(names[i]) +
                                          ", y = " + ws.names->repr(names[j]) + ", " +
                                          filter_str(g),
                                      truth ? "true in M[G]" : "false in M[G]",
                                      value ? "value in G" : "value not in G"};
                ++n_mem;
                const bool t2 = ws.hf.contains(img[j], img[i]);
                const bool v2 = (pm.mem[i * n + j] >> g.atom) & 1;
                if (t2 != v2 && !bad_mem)
                    bad_mem = Mismatch{"||x in y|| with x = " + ws.names->repr(names[i]) +
                                           ", y = " + ws.names->repr(names[j]) + ", " +
                                           filter_str(g),
                                       t2 ? "true in M[G]" : "false in M[G]",
                                       v2 ? "value in G" : "value not in G"};
            }

        if (with_g) {
            for (std::size_t i = 0; i < n; ++i) {
                ++n_g;
                const std::optional<AtomMask> dec = ctx.decode_elem(img[i]);
                const bool truth = dec.has_value() && ((*dec >> g.atom) & 1);
                const bool value = (ctx.value_G(names[i]).mask >> g.atom) & 1;
                if (truth != value && !bad_g)
                    bad_g = Mismatch{"G(a) with a = " + ws.names->repr(names[i]) + ", " +
                                         filter_str(g),
                                     truth ? "decoded element in G" : "no decoded element in G",
                                     value ? "value in G" : "value not in G"};
            }
        }

        // Quotient truth and value-in-filter both factor through the atomic
        // sweeps above, so constants may be replaced by representatives of
        // their interpretation class without changing either side. Every
        // sentence shape over representatives is then evaluated literally.
        const std::vector<std::size_t> reps = representative_positions(ws, img);
        EvalStructure st;
        st.hf = &ws.hf;
        st.domain = sorted_unique_sets(ws.hf, img);
        st.pred_holds = [&](const std::string& p, HfId x) {
            if (p != "G") return false;
            const std::optional<AtomMask> dec = ctx.decode_elem(x);
            return dec.has_value() && ((*dec >> g.atom) & 1);
        };
        st.name_value = [&](NameId id) { return ctx.interpret(g, id); };

        auto evaluate_both = [&](const FormulaPtr& s, std::uint64_t& counter,
                                 std::optional<Mismatch>& slot) {
            ++counter;
            const bool value = (ctx.value_qf(*s).mask >> g.atom) & 1;
            const bool truth = eval_in_structure(st, *s);
            if (truth != value && !slot)
                slot = Mismatch{print_formula(*s, pc) + ", " + filter_str(g),
                                truth ? "true in M[G]" : "false in M[G]",
                                value ? "value in G" : "value not in G"};
        };

        std::set<std::string> seen;
        for (const FormulaPtr& f : battery_qf) {
            const std::set<std::string> fv = f->free_vars();
            const std::vector<std::string> vars(fv.begin(), fv.end());
            std::vector<std::size_t> pick(vars.size(), 0);
            while (true) {
                FormulaPtr s = f;
                for (std::size_t i = 0; i < vars.size(); ++i)
                    s = substitute(s, vars[i], Term::mk_name(names[reps[pick[i]]]));
                if (seen.insert(print_formula(*s, pc)).second)
                    evaluate_both(s, n_rep, bad_rep);
                std::size_t pos = 0;
                while (pos < pick.size() && ++pick[pos] == reps.size()) pick[pos++] = 0;
                if (pos == pick.size()) break;
            }
        }

        for (int k = 0; k < 2000; ++k) {
            const FormulaPtr& f = battery_qf[rng() % battery_qf.size()];
            FormulaPtr s = f;
            for (const std::string& v : f->free_vars())
                s = substitute(s, v, Term::mk_name(names[rng() % n]));
            evaluate_both(s, n_rand, bad_rand);
        }
    }

    auto emit = [&](const std::string& claim, std::uint64_t count, const std::string& what,
                    const std::optional<Mismatch>& bad) {
        out.add(claim, count_str(count, what), "", "", !bad, bound);
        if (bad) out.add(claim, bad->instance, bad->lhs, bad->rhs, false, bound);
    };
    emit("atomic equality truth matches filter membership", n_eq, "instances", bad_eq);
    emit("atomic membership truth matches filter membership", n_mem, "instances", bad_mem);
    if (with_g)
        emit("generic predicate truth matches filter membership", n_g, "instances", bad_g);
    emit("sentence truth matches filter membership on representative constants", n_rep,
         "sentences", bad_rep);
    emit("sentence truth matches filter membership on sampled constants", n_rand, "sentences",
         bad_rand);

    std::uint64_t covered = 0;
    for (const FormulaPtr& f : battery_qf) {
        std::uint64_t inst = 1;
        for (std::size_t i = 0; i < f->free_vars().size(); ++i) inst *= n;
        covered += inst;
    }
    out.add("substitution instances represented by the class sweep",
            count_str(covered, "instances"), std::to_string(battery_qf.size()) + " shapes", "",
            true, bound);
}

void check_witness_hypothesis(unsigned max_atoms, Report& out) {
    static const char* kLabels[] = {"p", "q", "r", "s"};
    std::uint64_t checked = 0;
    struct Mismatch {
        std::string instance, lhs;
    };
    std::optional<Mismatch> bad;
    for (unsigned k = 1; k <= max_atoms && k <= 4; ++k) {
        std::vector<std::string> labels(kLabels, kLabels + k);
        auto alg = mk_powerset_algebra(labels);
        const auto families = all_element_families(*alg, std::size_t(1) << 16);
        for (const Ultrafilter& g : enumerate_ultrafilters(*alg)) {
            const MCompletenessReport rep = check_m_complete(g, families);
            checked += rep.items.size();
            if (rep.all_pass || bad) continue;
            for (const auto& item : rep.items)
                if (!item.pass) {
                    std::string fam = "{";
                    for (std::size_t i = 0; i < item.family.size(); ++i) {
                        if (i) fam += ", ";
                        fam += to_string(item.family[i]);
                    }
                    fam += "}";
                    bad = Mismatch{fam + ", " + filter_str(g),
                                   "sum " + to_string(item.family_sum) + " in filter"};
                    break;
                }
        }
    }
    const std::string bound =
        "every family of elements, every principal ultrafilter, atoms <= " +
        std::to_string(max_atoms);
    out.add("a finite sum in the filter has a summand in the filter",
            count_str(checked, "families"), "", "", !bad, bound);
    if (bad)
        out.add("a finite sum in the filter has a summand in the filter", bad->instance, bad->lhs,
                "no summand in filter", false, bound);
}

void check_isomorphism(Workspace& ws, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    const std::string bound = "atoms=" + std::to_string(ws.algebra->atom_count()) +
                              ", all names of rank <= 2 (" + std::to_string(names.size()) + ")";

    struct Mismatch {
        std::string instance, lhs, rhs;
    };
    std::optional<Mismatch> bad_equiv, bad_well, bad_inj, bad_edge, bad_ext;
    std::uint64_t n_well = 0, n_inj = 0, n_edge = 0;

    for (const Ultrafilter& g : enumerate_ultrafilters(*ws.algebra)) {
        const QuotientModel q = quotient_model(ctx, g, names, QuotientMode::induced);
        if (!q.equivalence_ok && !bad_equiv)
            bad_equiv = Mismatch{filter_str(g), "partition disagrees with ||x = y|| in G", ""};

        const std::vector<HfId> img = image_vector(ctx, g, names);
        auto pos = [&](NameId id) { return std::size_t(pm.index_of[id]); };

        for (std::size_t c = 0; c < q.classes.size(); ++c) {
            const HfId first = img[pos(q.classes[c][0])];
            for (std::size_t m = 1; m < q.classes[c].size(); ++m) {
                ++n_well;
                const HfId other = img[pos(q.classes[c][m])];
                if (other != first && !bad_well)
                    bad_well = Mismatch{"class of " + ws.names->repr(q.classes[c][0]) + " vs " +
                                            ws.names->repr(q.classes[c][m]) + ", " + filter_str(g),
                                        ws.hf.repr(first), ws.hf.repr(other)};
            }
        }

        for (std::size_t a = 0; a < q.classes.size(); ++a)
            for (std::size_t b = a + 1; b < q.classes.size(); ++b) {
                ++n_inj;
                if (img[pos(q.classes[a][0])] == img[pos(q.classes[b][0])] && !bad_inj)
                    bad_inj = Mismatch{ws.names->repr(q.classes[a][0]) + " vs " +
                                           ws.names->repr(q.classes[b][0]) + ", " + filter_str(g),
                                       ws.hf.repr(img[pos(q.classes[a][0])]), "distinct classes"};
            }

        for (std::size_t a = 0; a < q.classes.size(); ++a)
            for (std::size_t b = 0; b < q.classes.size(); ++b) {
                ++n_edge;
                const bool e = q.edge(a, b);
                const bool real =
                    ws.hf.contains(img[pos(q.classes[b][0])], img[pos(q.classes[a][0])]);
                if (e != real && !bad_edge)
                    bad_edge = Mismatch{"[" + ws.names->repr(q.classes[a][0]) + "] E [" +
                                            ws.names->repr(q.classes[b][0]) + "], " +
                                            filter_str(g),
                                        e ? "E holds" : "E fails",
                                        real ? "real membership holds" : "real membership fails"};
            }

        const ExtensionalityReport ext = check_extensionality(q);
        if (!ext.pass && !bad_ext) {
            const auto [a, b] = *ext.violation;
            bad_ext = Mismatch{"classes of " + ws.names->repr(q.classes[a][0]) + " and " +
                                   ws.names->repr(q.classes[b][0]) + ", " + filter_str(g),
                               "identical E-predecessors", "distinct classes"};
        }
    }

    auto emit = [&](const std::string& claim, std::uint64_t count, const std::string& what,
                    const std::optional<Mismatch>& bad) {
        out.add(claim, count_str(count, what), "", "", !bad, bound);
        if (bad) out.add(claim, bad->instance, bad->lhs, bad->rhs, false, bound);
    };
    out.add("value equality induces a partition", "per ultrafilter", "", "", !bad_equiv, bound);
    if (bad_equiv) out.add("value equality induces a partition", bad_equiv->instance,
                           bad_equiv->lhs, bad_equiv->rhs, false, bound);
    emit("the interpretation is constant on classes", n_well, "members", bad_well);
    emit("distinct classes interpret to distinct sets", n_inj, "class pairs", bad_inj);
    emit("E agrees with real membership on class representatives", n_edge, "class pairs",
         bad_edge);
    out.add("induced quotients are extensional", "all class pairs", "", "", !bad_ext, bound);
    if (bad_ext)
        out.add("induced quotients are extensional", bad_ext->instance, bad_ext->lhs,
                bad_ext->rhs, false, bound);
}

void check_extensionality_modes(Workspace& ws, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const NameId empty = ws.names->empty_name();
    const NameId zeroed = ws.names->mk_name({{empty, elem_zero(*ws.algebra)}});
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    const std::string pair_str =
        "x = " + ws.names->repr(empty) + ", y = " + ws.names->repr(zeroed);
    const std::string bound = "atoms=" + std::to_string(ws.algebra->atom_count());

    const BoolElem star = ctx.value_star_atomic(AtomKind::eq, empty, zeroed);
    out.add("raw equality separates the witness pair", pair_str, to_string(star),
            to_string(elem_zero(*ws.algebra)), star.is_zero(), bound);
    const BoolElem induced = ctx.value_atomic(AtomKind::eq, empty, zeroed);
    out.add("induced equality merges the witness pair", pair_str, to_string(induced),
            to_string(elem_one(*ws.algebra)), induced.is_one(), bound);

    bool star_violates = true;
    bool induced_holds = true;
    std::string star_detail, induced_detail;
    for (const Ultrafilter& g : enumerate_ultrafilters(*ws.algebra)) {
        const QuotientModel qs = quotient_model(ctx, g, {empty, zeroed}, QuotientMode::star);
        const ExtensionalityReport ext_s = check_extensionality(qs);
        if (ext_s.pass || qs.classes.size() != 2) {
            star_violates = false;
            star_detail = filter_str(g);
        }
        const QuotientModel qi = quotient_model(ctx, g, names, QuotientMode::induced);
        const ExtensionalityReport ext_i = check_extensionality(qi);
        if (!ext_i.pass) {
            induced_holds = false;
            induced_detail = filter_str(g);
        }
    }
    out.add("the star quotient of the witness pair violates extensionality", pair_str,
            star_detail.empty() ? "two singleton classes, empty E" : star_detail, "",
            star_violates, bound);
    out.add("the induced quotient of the full stratum is extensional",
            count_str(names.size(), "names"), induced_detail, "", induced_holds, bound);
}

void check_name_absoluteness(Workspace& ws, Report& out) {
    std::vector<NameId> checks;
    checks.reserve(ws.universe.members.size());
    for (HfId x : ws.universe.members) checks.push_back(ws.names->check_name(ws.hf, x));
    ValueCtx ctx(ws);
    const std::string bound =
        "all sets of rank < " + std::to_string(ws.bounds.rank_bound) + ", every ultrafilter";

    std::uint64_t count = 0;
    std::optional<std::pair<std::string, std::string>> bad;
    for (const Ultrafilter& g : enumerate_ultrafilters(*ws.algebra))
        for (std::size_t i = 0; i < checks.size(); ++i) {
            ++count;
            const HfId got = ctx.interpret(g, checks[i]);
            if (got != ws.universe.members[i] && !bad)
                bad = {"x = " + ws.hf.repr(ws.universe.members[i]) + ", " + filter_str(g),
                       ws.hf.repr(got)};
        }
    out.add("check names interpret to their sets", count_str(count, "instances"), "", "", !bad,
            bound);
    if (bad)
        out.add("check names interpret to their sets", bad->first, bad->second, "the set itself",
                false, bound);
}

void check_fo_stability(Workspace& ws, std::size_t min_stable, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    PrintContext pc = ws.print_context();

    const NameId empty = ws.names->empty_name();
    const std::vector<NameId> params = {
        empty,
        ws.names->mk_name({{empty, elem_atom(*ws.algebra, 0)}}),
        ws.names->singleton_one(empty),
    };

    std::vector<FormulaPtr> sentences;
    std::set<std::string> seen;
    auto admit = [&](const FormulaPtr& s) {
        if (s->is_sentence() && seen.insert(print_formula(*s, pc)).second)
            sentences.push_back(s);
    };
    for (const FormulaPtr& f : formula_battery(7, 2, false)) {
        if (f->quantifier_free()) continue;
        const std::set<std::string> fv = f->free_vars();
        if (fv.empty()) {
            admit(f);
            continue;
        }
        const std::vector<std::string> vars(fv.begin(), fv.end());
        std::vector<std::size_t> pick(vars.size(), 0);
        while (true) {
            FormulaPtr s = f;
            for (std::size_t i = 0; i < vars.size(); ++i)
                s = substitute(s, vars[i], Term::mk_name(params[pick[i]]));
            admit(s);
            std::size_t pos = 0;
            while (pos < pick.size() && ++pick[pos] == params.size()) pick[pos++] = 0;
            if (pos == pick.size()) break;
        }
    }

    std::size_t stable = 0, changed = 0, n_up = 0, n_down = 0;
    bool up_ok = true, down_ok = true;
    std::string up_detail, down_detail;
    for (const FormulaPtr& s : sentences) {
        const FoResult r = ctx.value_fo(*s, 1);
        if (r.stable)
            ++stable;
        else
            ++changed;
        bool has_pos = false, has_neg = false;
        quantifier_polarities(*s, true, has_pos, has_neg);
        if (has_pos && !has_neg) {
            ++n_up;
            if (!leq(r.value, r.next_value) && up_ok) {
                up_ok = false;
                up_detail = print_formula(*s, pc) + ": " + to_string(r.value) + " vs " +
                            to_string(r.next_value);
            }
        } else if (has_neg && !has_pos) {
            ++n_down;
            if (!leq(r.next_value, r.value) && down_ok) {
                down_ok = false;
                down_detail = print_formula(*s, pc) + ": " + to_string(r.value) + " vs " +
                              to_string(r.next_value);
            }
        }
    }

    const std::string bound = "witness stratum 1 probed against stratum 2, " +
                              std::to_string(sentences.size()) + " generated sentences";
    out.add("values of positively quantified sentences never shrink",
            count_str(n_up, "sentences"), up_detail, "", up_ok, bound);
    out.add("values of negatively quantified sentences never grow",
            count_str(n_down, "sentences"), down_detail, "", down_ok, bound);
    out.add("values of generated sentences are stable under stratum enlargement",
            count_str(stable, "stable sentences"),
            "required >= " + std::to_string(min_stable), "", stable >= min_stable, bound);
    out.add("sentences whose value changes at the next stratum", count_str(changed, "sentences"),
            "counted, not failed", "", true, bound);
}

void check_reflection(Workspace& ws, unsigned max_depth, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    PrintContext pc = ws.print_context();
    const unsigned top = ws.bounds.max_name_rank;
    const std::string bound = "ordinal clauses bounded by rank " + std::to_string(top) +
                              ", quantifier depth <= " + std::to_string(max_depth);
    const std::vector<Ultrafilter> ultras = enumerate_ultrafilters(*ws.algebra);

    const bool with_g = ws.algebra->atom_count() <= ValueCtx::max_encoded_atoms;
    std::vector<FormulaPtr> battery_qf;
    std::vector<FormulaPtr> battery_ex;
    for (const FormulaPtr& f : formula_battery(6, 2, with_g)) {
        if (f->quantifier_free())
            battery_qf.push_back(f);
        else if (quantifier_depth(*f) <= max_depth)
            battery_ex.push_back(f);
    }
    if (battery_ex.size() > 24) battery_ex.resize(24);

    std::uint64_t n_qf = 0;
    bool qf_ok = true;
    std::string qf_detail;
    for (const Ultrafilter& g : ultras)
        for (const FormulaPtr& f : battery_qf)
            for (unsigned alpha = 0; alpha <= top; ++alpha) {
                ++n_qf;
                if (!reflects(ctx, g, f, alpha) && qf_ok) {
                    qf_ok = false;
                    qf_detail = print_formula(*f, pc) + " at " + std::to_string(alpha) + ", " +
                                filter_str(g);
                }
            }
    out.add("quantifier-free formulas reflect at every level", count_str(n_qf, "instances"),
            qf_detail, "", qf_ok, bound);

    std::uint64_t n_neg = 0, n_conj = 0;
    bool neg_ok = true, conj_ok = true;
    std::string neg_detail, conj_detail;
    for (const Ultrafilter& g : ultras)
        for (unsigned alpha = 0; alpha < top; ++alpha) {
            for (const FormulaPtr& f : battery_ex) {
                ++n_neg;
                const bool rf = reflects(ctx, g, f, alpha);
                const bool rn = reflects(ctx, g, Formula::neg(f), alpha);
                if (rf != rn && neg_ok) {
                    neg_ok = false;
                    neg_detail = print_formula(*f, pc) + " at " + std::to_string(alpha);
                }
            }
            const std::size_t m = std::min<std::size_t>(battery_ex.size(), 8);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    ++n_conj;
                    const bool parts = reflects(ctx, g, battery_ex[i], alpha) &&
                                       reflects(ctx, g, battery_ex[j], alpha);
                    const bool whole =
                        reflects(ctx, g, Formula::conj({battery_ex[i], battery_ex[j]}), alpha);
                    if (parts != whole && conj_ok) {
                        conj_ok = false;
                        conj_detail = print_formula(*battery_ex[i], pc) + " and " +
                                      print_formula(*battery_ex[j], pc) + " at " +
                                      std::to_string(alpha);
                    }
                }
        }
    out.add("reflection commutes with negation", count_str(n_neg, "instances"), neg_detail, "",
            neg_ok, bound);
    out.add("a conjunction reflects exactly when its parts do", count_str(n_conj, "instances"),
            conj_detail, "", conj_ok, bound);

    // The counterexample: nothing of rank 0 has a member, but a rank-1 name
    // puts the empty name inside with value one, so witnesses exist above
    // and never below.
    const FormulaPtr counter = Formula::exists(
        "v0", Formula::mem(Term::mk_name(ws.names->empty_name()), Term::mk_var("v0")));
    const FormulaPtr control = Formula::exists(
        "v0", Formula::eq(Term::mk_var("v0"), Term::mk_var("v0")));
    bool detect_ok = true;
    std::string detect_info;
    for (const Ultrafilter& g : ultras) {
        ReflectFailure why;
        const bool r0 = reflects(ctx, g, counter, 0, &why);
        const bool r1 = reflects(ctx, g, counter, 1);
        const bool c0 = reflects(ctx, g, control, 0);
        if (r0 || !r1 || !c0) {
            detect_ok = false;
            detect_info = filter_str(g);
            break;
        }
        if (detect_info.empty())
            detect_info = "fails at level 0 via beta=" + std::to_string(why.beta) +
                          ", witness " + ws.names->repr(why.witness) + " at rank " +
                          std::to_string(why.gamma);
    }
    out.add("the constructed existential fails to reflect at level 0",
            print_formula(*counter, pc), detect_info, "", detect_ok, bound);
}

void check_star_completeness(Workspace& ws, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);

    for (const Ultrafilter& g : enumerate_ultrafilters(*ws.algebra)) {
        const StarCompleteReport rep = check_star_complete(ctx, g);
        const std::string bound = "ordinal bound " + std::to_string(rep.ordinal_bound) +
                                  ", formula size <= " + std::to_string(rep.formula_size_bound) +
                                  ", " + filter_str(g);
        for (const auto& row : rep.clause1) {
            out.add("full-domain names are absorbed at a bounded rank",
                    "domain = stratum " + std::to_string(row.alpha) + " (" +
                        std::to_string(row.names_checked) + " names)",
                    "partner rank <= " + std::to_string(row.beta), "", row.pass, bound);
            if (!row.pass && row.unmatched)
                out.add("full-domain names are absorbed at a bounded rank",
                        ws.names->repr(*row.unmatched), "no partner", "", false, bound);
        }
        std::size_t fails = 0;
        std::string first_fail;
        for (const auto& row : rep.clause2)
            if (!row.pass && fails++ == 0)
                first_fail = row.formula + " at " + std::to_string(row.alpha);
        out.add("every battery formula reflects cofinally often",
                count_str(rep.clause2.size(), "formula-level pairs"), first_fail, "", fails == 0,
                bound);
    }
}

void check_generic_predicate(Workspace& ws, Report& out) {
    const std::vector<NameId> names = ws.name_stratum(2);
    const PairMatrices pm = compute_pair_matrices(ws, names, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    const BoolAlg& alg = *ws.algebra;
    const std::string bound = "atoms=" + std::to_string(alg.atom_count()) +
                              ", all names of rank <= 2 (" + std::to_string(names.size()) + ")";

    bool check_ok = true;
    std::string check_detail;
    for (AtomMask m = 0; m <= alg.full_mask(); ++m) {
        const BoolElem b = elem_from_mask(alg, m);
        const BoolElem got = ctx.value_G(ctx.check_of_elem(b));
        if (got != b && check_ok) {
            check_ok = false;
            check_detail = "b = " + to_string(b) + ", got " + to_string(got);
        }
    }
    out.add("||G(check(b))|| = b for every algebra element",
            count_str(std::uint64_t(alg.full_mask()) + 1, "elements"), check_detail, "", check_ok,
            bound);

    // Transport along value equality: names that are not check names but
    // equal one with value one inherit the predicate value.
    const NameId empty = ws.names->empty_name();
    const NameId a_zero = ws.names->mk_name({{empty, elem_zero(alg)}});
    const NameId a_one = ws.names->singleton_one(empty);
    const BoolElem eq_zero = ctx.value_atomic(AtomKind::eq, a_zero, ctx.check_of_elem(elem_zero(alg)));
    const BoolElem eq_one =
        ctx.value_atomic(AtomKind::eq, a_one, ctx.check_of_elem(elem_atom(alg, 0)));
    const bool transport_ok = eq_zero.is_one() && ctx.value_G(a_zero).is_zero() &&
                              eq_one.is_one() && ctx.value_G(a_one) == elem_atom(alg, 0);
    out.add("value-equal names share the predicate value",
            "a = " + ws.names->repr(a_zero) + " and a = " + ws.names->repr(a_one),
            to_string(ctx.value_G(a_zero)) + ", " + to_string(ctx.value_G(a_one)),
            to_string(elem_zero(alg)) + ", " + to_string(elem_atom(alg, 0)), transport_ok, bound);

    std::uint64_t count = 0;
    bool sweep_ok = true;
    std::string sweep_detail;
    for (const Ultrafilter& g : enumerate_ultrafilters(alg)) {
        const std::vector<HfId> img = image_vector(ctx, g, names);
        for (std::size_t i = 0; i < names.size(); ++i) {
            ++count;
            const std::optional<AtomMask> dec = ctx.decode_elem(img[i]);
            const bool truth = dec.has_value() && ((*dec >> g.atom) & 1);
            const bool value = (ctx.value_G(names[i]).mask >> g.atom) & 1;
            if (truth != value && sweep_ok) {
                sweep_ok = false;
                sweep_detail = "a = " + ws.names->repr(names[i]) + ", " + filter_str(g);
            }
        }
    }
    out.add("the predicate holds exactly on names of filter elements",
            count_str(count, "instances"), sweep_detail, "", sweep_ok, bound);
}

void check_zfc_instances(Workspace& ws, Report& out) {
    const std::vector<NameId> names2 = ws.name_stratum(2);
    const std::vector<NameId> names1 = ws.name_stratum(1);
    const PairMatrices pm = compute_pair_matrices(ws, names2, true);
    ValueCtx ctx(ws);
    ctx.attach_matrices(&pm);
    const std::vector<Ultrafilter> ultras = enumerate_ultrafilters(*ws.algebra);
    const std::size_t n = names2.size();

    std::vector<std::vector<HfId>> imgs;
    for (const Ultrafilter& g : ultras) imgs.push_back(image_vector(ctx, g, names2));
    auto pos = [&](NameId id) { return std::size_t(pm.index_of[id]); };

    std::mt19937 rng(492031u);

    // Kuratowski pair names.
    {
        NamePool::Mark mk = ws.names->mark();
        std::uint64_t count = 0;
        bool ok = true;
        std::string detail;
        auto probe = [&](NameId a, NameId b) {
            const NameId p = ws.names->bpair_name(a, b);
            for (std::size_t u = 0; u < ultras.size(); ++u) {
                ++count;
                const HfId ia = imgs[u][pos(a)], ib = imgs[u][pos(b)];
                const HfId want =
                    ws.hf.intern({ws.hf.intern({ia}), ws.hf.intern({ia, ib})});
                const HfId got = ctx.interpret(ultras[u], p);
                if (got != want && ok) {
                    ok = false;
                    detail = "a = " + ws.names->repr(a) + ", b = " + ws.names->repr(b) + ", " +
                             filter_str(ultras[u]) + ": got " + ws.hf.repr(got);
                }
            }
        };
        for (NameId a : names1)
            for (NameId b : names1) probe(a, b);
        // The pair name has all values one, so its interpretation factors
        // through the interpretations of a and b. Representative pairs per
        // ultrafilter plus a seeded sample cover the rank-2 stratum.
        for (std::size_t u = 0; u < ultras.size(); ++u) {
            const std::vector<std::size_t> reps = representative_positions(ws, imgs[u]);
            for (std::size_t i : reps)
                for (std::size_t j : reps) probe(names2[i], names2[j]);
        }
        for (int k = 0; k < 400; ++k) probe(names2[rng() % n], names2[rng() % n]);
        out.add("pair names interpret to Kuratowski pairs", count_str(count, "instances"), detail,
                "", ok,
                "stratum 1 exhaustive; stratum 2 via representatives and a seeded sample");
        ws.names->release(mk);
    }

    // Union names, exhaustively over the rank <= 2 stratum.
    {
        NamePool::Mark mk = ws.names->mark();
        std::uint64_t count = 0;
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < n; ++i) {
            const NameId u_name = ws.names->union_name(names2[i]);
            for (std::size_t u = 0; u < ultras.size(); ++u) {
                ++count;
                std::vector<HfId> members;
                for (HfId member : ws.hf.elems(imgs[u][i]))
                    for (HfId x : ws.hf.elems(member)) members.push_back(x);
                const HfId want = ws.hf.intern(std::move(members));
                const HfId got = ctx.interpret(ultras[u], u_name);
                if (got != want && ok) {
                    ok = false;
                    detail = "a = " + ws.names->repr(names2[i]) + ", " + filter_str(ultras[u]) +
                             ": got " + ws.hf.repr(got) + ", want " + ws.hf.repr(want);
                }
            }
        }
        out.add("union names interpret to unions", count_str(count, "instances"), detail, "", ok,
                "all names of rank <= 2 (" + std::to_string(n) + ")");
        ws.names->release(mk);
    }

    // Replacement images; separation is the instance with a membership
    // constraint on the image variable.
    {
        NamePool::Mark mk = ws.names->mark();
        const NameId empty = ws.names->empty_name();
        const NameId pair_c = ws.names->check_name(ws.hf, ws.hf.intern({hf_empty}));
        const Term v0 = Term::mk_var("v0"), v1 = Term::mk_var("v1");
        const std::vector<std::pair<std::string, FormulaPtr>> phis = {
            {"identity", Formula::eq(v0, v1)},
            {"constant empty", Formula::eq(v1, Term::mk_name(empty))},
            {"members of the argument", Formula::mem(v1, v0)},
            {"separation by membership in check({{}})",
             Formula::conj({Formula::eq(v0, v1), Formula::mem(v1, Term::mk_name(pair_c))})},
        };

        std::vector<NameId> big_xs(names1.begin(), names1.end());
        big_xs.push_back(names2[n / 5]);
        big_xs.push_back(names2[n / 2]);
        big_xs.push_back(names2[n - 2]);

        std::uint64_t count = 0;
        bool ok = true;
        std::string detail;
        for (unsigned beta = 1; beta <= 2; ++beta) {
            const std::vector<NameId> stratum_b = ws.name_stratum(beta);
            for (const auto& [phi_desc, phi] : phis) {
                for (NameId big_x : big_xs) {
                    if (ws.names->rank(big_x) > beta) continue;
                    const NameId y = ctx.replacement_image_name(phi, "v0", "v1", big_x, beta);
                    for (std::size_t u = 0; u < ultras.size(); ++u) {
                        ++count;
                        const Ultrafilter& g = ultras[u];
                        EvalStructure st;
                        st.hf = &ws.hf;
                        st.domain = ws.universe.members;
                        st.name_value = [&](NameId id) { return ctx.interpret(g, id); };
                        const HfId img_x = ctx.interpret(g, big_x);
                        std::vector<HfId> want_members;
                        for (NameId a : stratum_b) {
                            const HfId img_a = ctx.interpret(g, a);
                            bool in = false;
                            for (const auto& [key, mask] : ws.names->entries(big_x)) {
                                (void)mask;
                                const HfId img_key = ctx.interpret(g, key);
                                if (!ws.hf.contains(img_x, img_key)) continue;
                                FormulaPtr inst = substitute(phi, "v0", Term::mk_set(img_key));
                                inst = substitute(inst, "v1", Term::mk_set(img_a));
                                if (eval_in_structure(st, *inst)) {
                                    in = true;
                                    break;
                                }
                            }
                            if (in) want_members.push_back(img_a);
                        }
                        const HfId want = ws.hf.intern(std::move(want_members));
                        const HfId got = ctx.interpret(g, y);
                        if (got != want && ok) {
                            ok = false;
                            detail = phi_desc + ", X = " + ws.names->repr(big_x) + ", beta = " +
                                     std::to_string(beta) + ", " + filter_str(g) + ": got " +
                                     ws.hf.repr(got) + ", want " + ws.hf.repr(want);
                        }
                    }
                }
            }
        }
        out.add("replacement images interpret to the definable image",
                count_str(count, "instances"), detail, "", ok,
                "4 formulas, stratum 1 exhaustive plus 3 rank-2 arguments, image strata 1 and 2");
        ws.names->release(mk);
    }

    // Indexed choice selectors.
    {
        NamePool::Mark mk = ws.names->mark();
        std::vector<NameId> xs(names1.begin(), names1.end());
        xs.push_back(names2[n / 3]);
        xs.push_back(names2[(2 * n) / 3]);
        xs.push_back(names2[n - 1]);
        std::uint64_t count = 0;
        bool ok = true;
        std::string detail;
        for (NameId x : xs) {
            const NameId f = ws.names->choice_fn_name(ws.hf, x);
            for (std::size_t u = 0; u < ultras.size(); ++u) {
                ++count;
                const Ultrafilter& g = ultras[u];
                std::vector<HfId> want_members;
                unsigned j = 0;
                for (const auto& [key, mask] : ws.names->entries(x)) {
                    (void)mask;
                    const HfId nj = ws.hf.numeral(j++);
                    const HfId ik = ctx.interpret(g, key);
                    want_members.push_back(
                        ws.hf.intern({ws.hf.intern({nj}), ws.hf.intern({nj, ik})}));
                }
                const HfId want = ws.hf.intern(std::move(want_members));
                const HfId got = ctx.interpret(g, f);
                if (got != want && ok) {
                    ok = false;
                    detail = "X = " + ws.names->repr(x) + ", " + filter_str(g) + ": got " +
                             ws.hf.repr(got);
                }
            }
        }
        out.add("choice selectors enumerate the key images", count_str(count, "instances"),
                detail, "", ok, "stratum 1 exhaustive plus 3 rank-2 arguments");
        ws.names->release(mk);
    }
}

void check_translation(Workspace& ws, const EnrichmentClass& h, unsigned battery_max_size,
                       Report& out) {
    const std::vector<TildeId> battery = slot_sentence_battery(ws, h.predicate, battery_max_size);
    const unsigned alpha_max = std::min(2u, ws.bounds.rank_bound);
    LModel model(ws, h, alpha_max, battery);
    const MhReport rep = check_mh_equality(model, model.stratum_names());
    const std::string hdesc = h.predicate + " = " + set_list_str(ws.hf, h.extension);
    const std::string bound = "universe rank < " + std::to_string(ws.bounds.rank_bound) +
                              ", slot sentences of size <= " + std::to_string(battery_max_size) +
                              " (" + std::to_string(rep.rows.size()) + " names)";

    bool rows_ok = true;
    std::string detail;
    for (const MhRow& row : rep.rows)
        if (!row.pass) {
            rows_ok = false;
            detail = ws.tildes->repr(row.tilde) + ": direct " + ws.hf.repr(row.direct) +
                     ", translated " + ws.hf.repr(row.translated);
            break;
        }
    out.add("direct and translated interpretations agree",
            hdesc + ", " + count_str(rep.rows.size(), "names"), detail, "", rows_ok, bound);
    out.add("the assembled universes coincide", hdesc,
            set_list_str(ws.hf, rep.direct_universe), set_list_str(ws.hf, rep.translated_universe),
            rep.universes_match, bound);
}

void check_translation_sweep(unsigned max_rank_bound, unsigned battery_max_size, Report& out) {
    for (unsigned rb = 1; rb <= max_rank_bound; ++rb) {
        WorkspaceBounds wb;
        wb.rank_bound = rb;
        Workspace ws({"p"}, wb);
        const std::vector<HfId> members = ws.universe.members;
        for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << members.size()); ++mask) {
            std::vector<HfId> ext;
            for (std::size_t i = 0; i < members.size(); ++i)
                if ((mask >> i) & 1) ext.push_back(members[i]);
            const EnrichmentClass h = mk_enrichment(ws.hf, "H", std::move(ext));
            check_translation(ws, h, battery_max_size, out);
        }
    }
}

void check_sentence_ultrafilter(Workspace& ws, const EnrichmentClass& h,
                                unsigned battery_max_size, Report& out) {
    const std::vector<TildeId> battery = slot_sentence_battery(ws, h.predicate, battery_max_size);
    const unsigned alpha_max = std::min(2u, ws.bounds.rank_bound);
    LModel model(ws, h, alpha_max, battery);
    BForm& bf = model.bform();
    const std::string bound = "slot sentences of size <= " + std::to_string(battery_max_size) +
                              ", " + h.predicate + " = " + set_list_str(ws.hf, h.extension);

    std::vector<BForm::Ref> refs;
    std::set<BForm::Ref> seen;
    std::uint64_t n_neg = 0, n_inst = 0;
    bool neg_ok = true, inst_ok = true;
    for (TildeId t : battery) {
        const FormulaPtr& s = ws.tildes->assignment(t)[0];
        const BForm::Ref r = model.asn(1, s);
        if (seen.insert(r).second) refs.push_back(r);
        ++n_neg;
        if (model.asn(1, Formula::neg(s)) != bf.complement(r)) neg_ok = false;
        if (s->kind() == Formula::Kind::exists) {
            ++n_inst;
            std::vector<BForm::Ref> family;
            for (TildeId a : model.strata()[1])
                family.push_back(
                    model.asn(1, substitute(s->kids()[0], s->var(), Term::mk_tilde(a))));
            if (bf.sum(family) != r) inst_ok = false;
        }
    }
    out.add("the assignment commutes with negation", count_str(n_neg, "sentences"), "", "",
            neg_ok, bound);
    out.add("an existential assignment is the sum of its instances",
            count_str(n_inst, "sentences"), "", "", inst_ok, bound);

    std::uint64_t n_dich = 0;
    bool dich_ok = true;
    for (BForm::Ref r : refs) {
        ++n_dich;
        if (model.in_ultrafilter(r) == model.in_ultrafilter(bf.complement(r))) dich_ok = false;
    }
    out.add("exactly one of a value and its complement is accepted",
            count_str(n_dich, "values"), "", "", dich_ok, bound);

    const std::size_t m = std::min<std::size_t>(refs.size(), 16);
    std::uint64_t n_lat = 0;
    bool lat_ok = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            ++n_lat;
            const bool a = model.in_ultrafilter(refs[i]);
            const bool b = model.in_ultrafilter(refs[j]);
            if (model.in_ultrafilter(bf.meet(refs[i], refs[j])) != (a && b)) lat_ok = false;
            if (model.in_ultrafilter(bf.join(refs[i], refs[j])) != (a || b)) lat_ok = false;
        }
    out.add("acceptance respects meets and joins", count_str(n_lat, "pairs"), "", "", lat_ok,
            bound);

    const std::size_t fam_base = std::min<std::size_t>(refs.size(), 12);
    std::uint64_t n_sum = 0, n_accepted = 0;
    bool sum_ok = true;
    auto test_family = [&](const std::vector<BForm::Ref>& family) {
        ++n_sum;
        if (!model.in_ultrafilter(bf.sum(family))) return;
        ++n_accepted;
        for (BForm::Ref r : family)
            if (model.in_ultrafilter(r)) return;
        sum_ok = false;
    };
    for (std::size_t i = 0; i < fam_base; ++i) {
        test_family({refs[i]});
        for (std::size_t j = i + 1; j < fam_base; ++j) {
            test_family({refs[i], refs[j]});
            for (std::size_t k = j + 1; k < fam_base; ++k)
                test_family({refs[i], refs[j], refs[k]});
        }
    }
    out.add("an accepted sum has an accepted summand",
            count_str(n_sum, "families") + ", " + count_str(n_accepted, "accepted"), "", "",
            sum_ok, bound);
}

namespace {

// A tiny propositional language with its own direct evaluator, used as the
// independent oracle for canonical forms. Expressions live in an arena.
struct PExpr {
    enum class K { atom, top, bot, neg, conj, disj };
    K k = K::atom;
    int atom = -1;
    int a = -1, b = -1;
};

struct PArena {
    std::vector<PExpr> nodes;

    int atom(int i) { return push({PExpr::K::atom, i, -1, -1}); }
    int top() { return push({PExpr::K::top, -1, -1, -1}); }
    int bot() { return push({PExpr::K::bot, -1, -1, -1}); }
    int neg(int x) { return push({PExpr::K::neg, -1, x, -1}); }
    int conj(int x, int y) { return push({PExpr::K::conj, -1, x, y}); }
    int disj(int x, int y) { return push({PExpr::K::disj, -1, x, y}); }

    int push(PExpr e) {
        nodes.push_back(e);
        return int(nodes.size()) - 1;
    }

    bool eval(int id, unsigned assignment) const {
        const PExpr& e = nodes[id];
        switch (e.k) {
        case PExpr::K::atom: return (assignment >> e.atom) & 1;
        case PExpr::K::top: return true;
        case PExpr::K::bot: return false;
        case PExpr::K::neg: return !eval(e.a, assignment);
        case PExpr::K::conj: return eval(e.a, assignment) && eval(e.b, assignment);
        case PExpr::K::disj: return eval(e.a, assignment) || eval(e.b, assignment);
        }
        return false;
    }

    std::string render(int id, const std::vector<std::string>& labels) const {
        const PExpr& e = nodes[id];
        switch (e.k) {
        case PExpr::K::atom: return labels[std::size_t(e.atom)];
        case PExpr::K::top: return "1";
        case PExpr::K::bot: return "0";
        case PExpr::K::neg: return "-" + render(e.a, labels);
        case PExpr::K::conj: return "(" + render(e.a, labels) + " * " + render(e.b, labels) + ")";
        case PExpr::K::disj: return "(" + render(e.a, labels) + " + " + render(e.b, labels) + ")";
        }
        return "";
    }

    BForm::Ref build(BForm& bf, int id, const std::vector<std::string>& labels) const {
        const PExpr& e = nodes[id];
        switch (e.k) {
        case PExpr::K::atom: return bf.var(labels[std::size_t(e.atom)]);
        case PExpr::K::top: return bf.one;
        case PExpr::K::bot: return bf.zero;
        case PExpr::K::neg: return bf.complement(build(bf, e.a, labels));
        case PExpr::K::conj: return bf.meet(build(bf, e.a, labels), build(bf, e.b, labels));
        case PExpr::K::disj: return bf.join(build(bf, e.a, labels), build(bf, e.b, labels));
        }
        return bf.zero;
    }
};

} // namespace

void check_canonical_forms(Report& out) {
    const std::vector<std::string> labels = {"A", "B", "C", "D", "E", "F"};
    const unsigned n_atoms = 6;
    PArena arena;
    BForm bf;

    // Exhaustive family to 5 nodes over the first 3 atoms.
    std::vector<std::vector<int>> by_nodes(6);
    for (int i = 0; i < 3; ++i) by_nodes[1].push_back(arena.atom(i));
    by_nodes[1].push_back(arena.top());
    by_nodes[1].push_back(arena.bot());
    for (std::size_t sz = 2; sz <= 5; ++sz) {
        for (int e : by_nodes[sz - 1]) by_nodes[sz].push_back(arena.neg(e));
        for (std::size_t sa = 1; sa + 1 < sz; ++sa)
            for (int a : by_nodes[sa])
                for (int b : by_nodes[sz - 1 - sa]) {
                    by_nodes[sz].push_back(arena.conj(a, b));
                    by_nodes[sz].push_back(arena.disj(a, b));
                }
    }
    std::vector<int> family;
    for (const auto& layer : by_nodes)
        for (int e : layer) family.push_back(e);
    const std::size_t exhaustive_count = family.size();

    // Seeded sample up to 9 nodes over all 6 atoms.
    std::mt19937 rng(73111u);
    std::function<int(int)> gen = [&](int budget) -> int {
        if (budget <= 1 || rng() % 4 == 0) {
            const unsigned pick = rng() % 8;
            if (pick < 6) return arena.atom(int(rng() % n_atoms));
            return pick == 6 ? arena.top() : arena.bot();
        }
        const unsigned kind = rng() % 3;
        if (kind == 0) return arena.neg(gen(budget - 1));
        const int left = 1 + int(rng() % unsigned(budget - 2 > 0 ? budget - 2 : 1));
        const int a = gen(left);
        const int b = gen(budget - 1 - left);
        return kind == 1 ? arena.conj(a, b) : arena.disj(a, b);
    };
    for (int k = 0; k < 250; ++k) family.push_back(gen(9));

    std::vector<std::uint64_t> tables(family.size());
    std::vector<BForm::Ref> forms(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::uint64_t t = 0;
        for (unsigned m = 0; m < 64; ++m)
            if (arena.eval(family[i], m)) t |= std::uint64_t(1) << m;
        tables[i] = t;
        forms[i] = arena.build(bf, family[i], labels);
    }
    const std::string bound = "all 64 assignments of 6 atoms; " +
                              std::to_string(exhaustive_count) +
                              " formulas exhaustive to 5 nodes over 3 atoms, 250 sampled to 9 "
                              "nodes over 6";

    std::uint64_t n_pairs = 0;
    bool pair_ok = true;
    std::string pair_detail;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            ++n_pairs;
            if ((tables[i] == tables[j]) != (forms[i] == forms[j]) && pair_ok) {
                pair_ok = false;
                pair_detail = arena.render(family[i], labels) + " vs " +
                              arena.render(family[j], labels);
            }
        }
    out.add("canonical forms coincide exactly for table-equal formulas",
            count_str(n_pairs, "pairs"), pair_detail, "", pair_ok, bound);

    std::uint64_t n_eval = 0;
    bool eval_ok = true;
    std::string eval_detail;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (unsigned m = 0; m < 64; ++m) {
            ++n_eval;
            const bool direct = arena.eval(family[i], m);
            const bool via = bf.eval(forms[i], [&](const std::string& label) {
                for (unsigned a = 0; a < n_atoms; ++a)
                    if (labels[a] == label) return ((m >> a) & 1) != 0;
                return false;
            });
            if (direct != via && eval_ok) {
                eval_ok = false;
                eval_detail = arena.render(family[i], labels) + " at assignment " +
                              std::to_string(m);
            }
        }
    out.add("canonical form evaluation matches direct evaluation",
            count_str(n_eval, "evaluations"), eval_detail, "", eval_ok, bound);

    const BForm::Ref x = bf.var("A"), y = bf.var("B");
    const bool ex_ok = x != bf.zero && x != bf.one && bf.join(x, bf.complement(x)) == bf.one &&
                       bf.meet(x, bf.complement(x)) == bf.zero &&
                       bf.complement(bf.meet(x, y)) ==
                           bf.join(bf.complement(x), bf.complement(y)) &&
                       bf.sum({}) == bf.zero && bf.product({}) == bf.one;
    out.add("atoms are nontrivial and the lattice identities hold", "A, B", "", "", ex_ok, bound);
}

} // namespace bvm
