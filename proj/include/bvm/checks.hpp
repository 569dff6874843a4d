// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstddef>

#include "bvm/hf.hpp"
#include "bvm/report.hpp"
#include "bvm/workspace.hpp"

namespace bvm {

// Verification suites. Each one appends to the report: a summary record per
// claim, and on failure one extra record with the first violating instance
// in the enumeration order the suite documents in its `bound` field. Suites
// enumerate names, formulas, and ultrafilters in canonical order throughout,
// so their output is reproducible byte for byte.

// Laws 1-4 of the model axioms for the induced values, over every name of
// rank <= 2. Laws 3 and 4 are checked per atom through bit-matrix closure,
// which covers all triples and quadruples without enumerating them one by
// one; a failure is re-expanded to a concrete tuple.
void check_bvm_laws(Workspace& ws, Report& out);

// Quotient truth against value-in-filter for quantifier-free sentences, per
// principal ultrafilter: exhaustive over atomic sentences on the rank <= 2
// stratum, exhaustive over all sentences of size <= max_size whose constants
// come from interpretation-class representatives, and a seeded random sample
// over the full stratum.
void check_forcing_theorem(Workspace& ws, unsigned max_size, Report& out);

// Whenever a finite sum of algebra elements lands in a principal
// ultrafilter, one of the summands is already there. Exhaustive over every
// family of elements for every algebra with at most max_atoms atoms.
void check_witness_hypothesis(unsigned max_atoms, Report& out);

// The map [x] -> i_G(x) on the induced quotient of the rank <= 2 stratum:
// constant on classes, injective across them, and carrying E to real
// membership. Includes the extensionality check of the quotient.
void check_isomorphism(Workspace& ws, Report& out);

// The two evaluation modes on the documented witness pair {empty name,
// {empty -> 0}}: raw equality keeps them apart and the star quotient
// violates extensionality; induced equality merges them and the induced
// quotient is extensional.
void check_extensionality_modes(Workspace& ws, Report& out);

// i_G(check(x)) = x for every universe member and every ultrafilter.
void check_name_absoluteness(Workspace& ws, Report& out);

// Stratified values of generated quantified sentences, probed one stratum
// higher: values never shrink, and at least min_stable sentences keep their
// value exactly (those are the sentences whose witness stratum is already
// large enough; the rest are counted, not failed).
void check_fo_stability(Workspace& ws, std::size_t min_stable, Report& out);

// The reflection predicate: quantifier-free formulas reflect at every level,
// negation and junctions commute with it, and the documented existential
// counterexample is detected at level 0. max_depth caps the quantifier
// nesting of the closure battery (depth 2 scans the square of the top
// stratum, which is only tractable on small algebras).
void check_reflection(Workspace& ws, unsigned max_depth, Report& out);

// Both completeness clauses of the starred forcing structure, per
// ultrafilter: domain absorption rank by rank and cofinal reflection over
// the formula battery.
void check_star_completeness(Workspace& ws, Report& out);

// The generic predicate: value one exactly on check names of filter
// elements, transported along value-equal names, and matching the decoded
// interpretation on the whole rank <= 2 stratum.
void check_generic_predicate(Workspace& ws, Report& out);

// Instance checks for the set-existence constructions: Kuratowski pair
// names, union names, replacement images (separation runs through them),
// and the indexed choice selector, each interpreted under every ultrafilter
// and compared against the set computed directly.
void check_zfc_instances(Workspace& ws, Report& out);

// The translation theorem on one universe and one class H: every stratum
// name interprets to the same set directly and through its translated
// sentence-algebra name, and the two assembled universes coincide.
void check_translation(Workspace& ws, const EnrichmentClass& h, unsigned battery_max_size,
                       Report& out);

// check_translation over every H: for each rank bound up to max_rank_bound,
// every subset of the universe in mask order.
void check_translation_sweep(unsigned max_rank_bound, unsigned battery_max_size, Report& out);

// Laws of the sentence-algebra ultrafilter on one model: complement
// dichotomy, meet/join closure, a witness inside every accepted sum the
// suite constructs, and commutation of the assignment map with negation and
// instantiation.
void check_sentence_ultrafilter(Workspace& ws, const EnrichmentClass& h,
                                unsigned battery_max_size, Report& out);

// Canonical forms against a truth-table oracle: two formulas get the same
// node exactly when their tables over six atoms agree, and node evaluation
// matches direct evaluation on every assignment.
void check_canonical_forms(Report& out);

} // namespace bvm
