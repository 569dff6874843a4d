// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/boolean_algebra.hpp"

#include <algorithm>
#include <set>

namespace bvm {

BoolAlg::BoolAlg(std::vector<std::string> atom_labels) : m_atoms(std::move(atom_labels)) {
    if (m_atoms.empty())
        fail_input("algebra needs at least one atom");
    if (m_atoms.size() > max_atoms)
        fail_bounds("algebra has " + std::to_string(m_atoms.size()) + " atoms, cap is " +
                    std::to_string(max_atoms));
    std::set<std::string> seen;
    for (const auto& a : m_atoms) {
        if (a.empty())
            fail_input("empty atom label");
        if (!seen.insert(a).second)
            fail_input("duplicate atom label '" + a + "'");
    }
    m_full = (m_atoms.size() == 32) ? ~AtomMask(0)
                                    : ((AtomMask(1) << m_atoms.size()) - 1);
}

int BoolAlg::atom_index(const std::string& label) const {
    for (std::size_t i = 0; i < m_atoms.size(); ++i)
        if (m_atoms[i] == label)
            return static_cast<int>(i);
    return -1;
}

std::shared_ptr<const BoolAlg> mk_powerset_algebra(std::vector<std::string> atom_labels) {
    return std::make_shared<const BoolAlg>(std::move(atom_labels));
}

namespace {

void require_same(const BoolAlg& alg, const BoolElem& x) {
    if (x.alg != &alg)
        fail_input("boolean element belongs to a different algebra");
}

} // namespace

BoolElem elem_zero(const BoolAlg& alg) { return {&alg, 0}; }
BoolElem elem_one(const BoolAlg& alg) { return {&alg, alg.full_mask()}; }

BoolElem elem_atom(const BoolAlg& alg, std::size_t atom) {
    if (atom >= alg.atom_count())
        fail_input("atom index out of range");
    return {&alg, AtomMask(1) << atom};
}

BoolElem elem_from_mask(const BoolAlg& alg, AtomMask mask) {
    if ((mask & ~alg.full_mask()) != 0)
        fail_input("element mask has bits outside the algebra");
    return {&alg, mask};
}

BoolElem elem_from_labels(const BoolAlg& alg, const std::vector<std::string>& labels) {
    AtomMask m = 0;
    for (const auto& l : labels) {
        int i = alg.atom_index(l);
        if (i < 0)
            fail_input("unknown atom '" + l + "'");
        m |= AtomMask(1) << i;
    }
    return {&alg, m};
}

BoolElem complement(BoolElem a) {
    return {a.alg, static_cast<AtomMask>(~a.mask & a.alg->full_mask())};
}

BoolElem meet(BoolElem a, BoolElem b) {
    if (a.alg != b.alg)
        fail_input("meet of elements from different algebras");
    return {a.alg, static_cast<AtomMask>(a.mask & b.mask)};
}

BoolElem join(BoolElem a, BoolElem b) {
    if (a.alg != b.alg)
        fail_input("join of elements from different algebras");
    return {a.alg, static_cast<AtomMask>(a.mask | b.mask)};
}

BoolElem sum(const BoolAlg& alg, const std::vector<BoolElem>& xs) {
    AtomMask m = 0;
    for (const auto& x : xs) {
        require_same(alg, x);
        m |= x.mask;
    }
    return {&alg, m};
}

BoolElem product(const BoolAlg& alg, const std::vector<BoolElem>& xs) {
    AtomMask m = alg.full_mask();
    for (const auto& x : xs) {
        require_same(alg, x);
        m &= x.mask;
    }
    return {&alg, m};
}

bool leq(BoolElem a, BoolElem b) {
    if (a.alg != b.alg)
        fail_input("order comparison of elements from different algebras");
    return (a.mask & ~b.mask) == 0;
}

std::string to_string(BoolElem a) {
    std::string out = "[";
    bool first = true;
    for (std::size_t i = 0; i < a.alg->atom_count(); ++i) {
        if (a.mask & (AtomMask(1) << i)) {
            if (!first)
                out += ' ';
            out += a.alg->atom_labels()[i];
            first = false;
        }
    }
    out += ']';
    return out;
}

bool Ultrafilter::contains(BoolElem x) const {
    if (x.alg != alg)
        fail_input("ultrafilter membership for an element of a different algebra");
    return (x.mask >> atom) & 1;
}

std::vector<Ultrafilter> enumerate_ultrafilters(const BoolAlg& alg) {
    std::vector<Ultrafilter> out;
    out.reserve(alg.atom_count());
    for (std::size_t i = 0; i < alg.atom_count(); ++i)
        out.push_back({&alg, i});
    return out;
}

MCompletenessReport check_m_complete(const Ultrafilter& u,
                                     const std::vector<std::vector<BoolElem>>& families) {
    MCompletenessReport rep;
    rep.items.reserve(families.size());
    for (const auto& fam : families) {
        MCompletenessReport::Item item;
        item.family = fam;
        item.family_sum = sum(*u.alg, fam);
        if (!u.contains(item.family_sum)) {
            item.pass = true; // nothing to witness
        } else {
            for (std::size_t i = 0; i < fam.size(); ++i) {
                if (u.contains(fam[i])) {
                    item.witness = i;
                    break;
                }
            }
            item.pass = item.witness.has_value();
        }
        rep.all_pass = rep.all_pass && item.pass;
        rep.items.push_back(std::move(item));
    }
    return rep;
}

std::vector<std::vector<BoolElem>> all_element_families(const BoolAlg& alg, std::size_t cap) {
    const std::size_t n_elems = std::size_t(1) << alg.atom_count();
    if (n_elems > 20)
        fail_bounds("family enumeration over " + std::to_string(n_elems) + " elements");
    const std::size_t n_fams = std::size_t(1) << n_elems;
    if (n_fams > cap)
        fail_bounds("2^" + std::to_string(n_elems) + " families exceeds cap " +
                    std::to_string(cap));
    std::vector<std::vector<BoolElem>> fams;
    fams.reserve(n_fams);
    for (std::size_t f = 0; f < n_fams; ++f) {
        std::vector<BoolElem> fam;
        for (std::size_t e = 0; e < n_elems; ++e)
            if ((f >> e) & 1)
                fam.push_back(elem_from_mask(alg, static_cast<AtomMask>(e)));
        fams.push_back(std::move(fam));
    }
    return fams;
}

} // namespace bvm
