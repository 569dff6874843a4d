// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bvm/bform.hpp"
#include "bvm/hf.hpp"
#include "bvm/workspace.hpp"

namespace bvm {

// Levels of the constructible hierarchy over the ground universe enriched by
// one extra class H: level 0 is empty, level a+1 collects every subset of
// level a definable with parameters, quantifiers relativized to the level,
// and one of the member-or-H predicates. At this scale parameters already
// define every subset, so each successor level is the full powerset of the
// one before; the construction still verifies a defining formula for every
// subset by evaluation, and cross-checks small levels against the definable
// subsets engine. Throws errc::violation if any of that disagrees.
std::vector<std::vector<HfId>> build_l_hierarchy(Workspace& ws, const EnrichmentClass& h,
                                                 unsigned alpha_max);

// A name valued in the sentence algebra, the translation image of a tilde
// name. Values line up slot by slot with the translated previous stratum;
// level 1 is the empty name. Distinctness of translated domain entries is
// not an issue at level <= 2 since the level-1 stratum is a singleton.
struct BFormName {
    unsigned level = 1;
    std::vector<BForm::Ref> values;
};

class LModel;

// Membership oracle for the class of sentences true in the assembled model.
// Membership factors through canonical forms, so propositionally equivalent
// sentences always land on the same side.
struct HUltrafilter {
    const LModel* model = nullptr;
    bool contains(BForm::Ref r) const;
};

struct MhRow {
    TildeId tilde = 0;
    HfId direct = 0;     // interpretation by evaluating the defining sentences
    HfId translated = 0; // interpretation of the translated name by the ultrafilter
    bool pass = false;
};

struct MhReport {
    std::vector<MhRow> rows;
    std::vector<HfId> direct_universe;
    std::vector<HfId> translated_universe;
    bool universes_match = false;
    bool pass = false;
};

// The model built from the workspace and a chosen class H: the hierarchy
// levels, the tilde-name strata that assemble them, the direct
// interpretation of tilde names, and their translation into names over the
// sentence algebra. Construction verifies that the interpreted strata
// assemble the levels exactly (errc::violation otherwise).
class LModel {
public:
    // Builds levels 0..alpha_max; name strata stop at
    // min(alpha_max, max tilde level). `stratum_two` supplies the level-2
    // names, normally slot_sentence_battery plus any declared ones.
    LModel(Workspace& ws, EnrichmentClass h, unsigned alpha_max, std::vector<TildeId> stratum_two);
    LModel(const LModel&) = delete;
    LModel& operator=(const LModel&) = delete;

    Workspace& workspace() { return m_ws; }
    const EnrichmentClass& h() const { return m_h; }
    const std::vector<std::vector<HfId>>& levels() const { return m_levels; }
    const std::vector<std::vector<TildeId>>& strata() const { return m_strata; }
    unsigned name_level_max() const { return m_name_max; }
    BForm& bform() { return m_bf; }

    // Every stratum name, level 1 upward, in canonical order.
    std::vector<TildeId> stratum_names() const;

    // Interpretation of a tilde name: the set of interpreted slot names
    // whose defining sentence holds over the previous level.
    HfId interpret(TildeId t);

    // Quantifier elimination at a stratum: an exists-formula becomes the
    // disjunction of its instances at the stratum's names.
    FormulaPtr expand(unsigned alpha, const FormulaPtr& f);

    // Assignment of a sentence (parameters of level <= alpha) into the
    // sentence algebra: expand, then canonicalize.
    BForm::Ref asn(unsigned alpha, const FormulaPtr& sentence);

    // Canonical form that also records each atomic sentence's truth in the
    // assembled model, so the ultrafilter oracle can evaluate the result.
    BForm::Ref canonical(const Formula& qf_sentence);

    // Truth of one atomic sentence (terms are tilde names) in the model.
    bool atom_truth(const Formula& atom);

    // Translation of a tilde name into a name over the sentence algebra.
    const BFormName& translate(TildeId t);

    // Interpretation of the translated name through the ultrafilter.
    HfId interpret_translated(TildeId t);

    HUltrafilter ultrafilter() const { return HUltrafilter{this}; }
    bool in_ultrafilter(BForm::Ref r) const;

private:
    bool pred_truth(const std::string& pred, HfId x) const;

    Workspace& m_ws;
    EnrichmentClass m_h;
    unsigned m_alpha_max = 0;
    unsigned m_name_max = 0;
    std::vector<std::vector<HfId>> m_levels;
    std::vector<std::vector<TildeId>> m_strata;
    BForm m_bf;
    PrintContext m_pc; // alias-free: atom labels are structural renderings
    std::map<TildeId, HfId> m_ih;
    std::map<TildeId, BFormName> m_translations;
    std::map<TildeId, HfId> m_itr;
    std::map<std::string, bool> m_atom_truth;
};

// Every sentence of size <= max_size in the slot-sentence language (terms
// are the empty tilde name and bound variables, predicates are the declared
// enrichments plus `h_pred`), each interned as a level-2 tilde name.
std::vector<TildeId> slot_sentence_battery(Workspace& ws, const std::string& h_pred,
                                           unsigned max_size);

// For each tilde name, compares the direct interpretation with the
// ultrafilter interpretation of its translation, then compares the two
// assembled universes as sets.
MhReport check_mh_equality(LModel& model, const std::vector<TildeId>& tildes);

} // namespace bvm
