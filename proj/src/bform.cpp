// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/bform.hpp"

#include <algorithm>
#include <set>

#include "bvm/error.hpp"

namespace bvm {

namespace {

std::uint64_t triple_key(std::uint32_t var, BForm::Ref lo, BForm::Ref hi) {
    std::uint64_t h = var;
    h = h * 0x9e3779b97f4a7c15ULL + lo;
    h = h * 0x9e3779b97f4a7c15ULL + hi;
    return h;
}

} // namespace

BForm::BForm() {
    m_nodes.resize(2); // terminals
}

bool BForm::var_before(std::uint32_t a, std::uint32_t b) const {
    return m_labels[a] < m_labels[b];
}

BForm::Ref BForm::mk(std::uint32_t var, Ref lo, Ref hi) {
    if (lo == hi) return lo;
    std::uint64_t key = triple_key(var, lo, hi);
    auto it = m_unique.find(key);
    if (it != m_unique.end()) {
        const Node& n = m_nodes[it->second];
        if (n.var == var && n.lo == lo && n.hi == hi) return it->second;
        // hash collision: fall through to a linear probe over a salted key
        std::uint64_t salt = key;
        while (true) {
            salt = salt * 6364136223846793005ULL + 1442695040888963407ULL;
            auto jt = m_unique.find(salt);
            if (jt == m_unique.end()) {
                key = salt;
                break;
            }
            const Node& m = m_nodes[jt->second];
            if (m.var == var && m.lo == lo && m.hi == hi) return jt->second;
        }
    }
    Ref ref = static_cast<Ref>(m_nodes.size());
    m_nodes.push_back({var, lo, hi});
    m_unique.emplace(key, ref);
    return ref;
}

BForm::Ref BForm::var(const std::string& label) {
    auto it = m_var_ids.find(label);
    std::uint32_t id;
    if (it != m_var_ids.end()) {
        id = it->second;
    } else {
        id = static_cast<std::uint32_t>(m_labels.size());
        m_labels.push_back(label);
        m_var_ids.emplace(label, id);
    }
    return mk(id, zero, one);
}

std::uint32_t BForm::top_var(Ref a, Ref b) const {
    if (a <= one) return m_nodes[b].var;
    if (b <= one) return m_nodes[a].var;
    std::uint32_t va = m_nodes[a].var, vb = m_nodes[b].var;
    return var_before(vb, va) ? vb : va;
}

BForm::Ref BForm::apply(bool is_meet, Ref a, Ref b) {
    if (a == b) return a;
    if (is_meet) {
        if (a == zero || b == zero) return zero;
        if (a == one) return b;
        if (b == one) return a;
    } else {
        if (a == one || b == one) return one;
        if (a == zero) return b;
        if (b == zero) return a;
    }
    if (a > b) std::swap(a, b);
    std::uint64_t key = (std::uint64_t(a) << 33) | (std::uint64_t(b) << 1) | (is_meet ? 1 : 0);
    auto it = m_apply_memo.find(key);
    if (it != m_apply_memo.end()) return it->second;

    std::uint32_t v = top_var(a, b);
    Ref a_lo = a, a_hi = a, b_lo = b, b_hi = b;
    if (a > one && m_nodes[a].var == v) {
        a_lo = m_nodes[a].lo;
        a_hi = m_nodes[a].hi;
    }
    if (b > one && m_nodes[b].var == v) {
        b_lo = m_nodes[b].lo;
        b_hi = m_nodes[b].hi;
    }
    Ref out = mk(v, apply(is_meet, a_lo, b_lo), apply(is_meet, a_hi, b_hi));
    m_apply_memo.emplace(key, out);
    return out;
}

BForm::Ref BForm::complement(Ref a) {
    if (a == zero) return one;
    if (a == one) return zero;
    auto it = m_neg_memo.find(a);
    if (it != m_neg_memo.end()) return it->second;
    const Node n = m_nodes[a];
    Ref out = mk(n.var, complement(n.lo), complement(n.hi));
    m_neg_memo.emplace(a, out);
    return out;
}

BForm::Ref BForm::meet(Ref a, Ref b) {
    return apply(true, a, b);
}

BForm::Ref BForm::join(Ref a, Ref b) {
    return apply(false, a, b);
}

BForm::Ref BForm::sum(const std::vector<Ref>& xs) {
    Ref acc = zero;
    for (Ref x : xs) acc = join(acc, x);
    return acc;
}

BForm::Ref BForm::product(const std::vector<Ref>& xs) {
    Ref acc = one;
    for (Ref x : xs) acc = meet(acc, x);
    return acc;
}

bool BForm::eval(Ref a, const std::function<bool(const std::string&)>& truth) const {
    while (a > one) {
        const Node& n = m_nodes[a];
        a = truth(m_labels[n.var]) ? n.hi : n.lo;
    }
    return a == one;
}

std::vector<std::string> BForm::support(Ref a) const {
    std::set<std::string> labels;
    std::set<Ref> seen;
    std::vector<Ref> stack{a};
    while (!stack.empty()) {
        Ref r = stack.back();
        stack.pop_back();
        if (r <= one || !seen.insert(r).second) continue;
        labels.insert(m_labels[m_nodes[r].var]);
        stack.push_back(m_nodes[r].lo);
        stack.push_back(m_nodes[r].hi);
    }
    return {labels.begin(), labels.end()};
}

BForm::Ref canonical_form(BForm& bf, const Formula& s, const PrintContext& pc) {
    switch (s.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
    case Formula::Kind::pred:
        return bf.var(print_formula(s, pc));
    case Formula::Kind::neg:
        return bf.complement(canonical_form(bf, *s.kids()[0], pc));
    case Formula::Kind::conj: {
        BForm::Ref acc = BForm::one;
        for (const FormulaPtr& kid : s.kids()) acc = bf.meet(acc, canonical_form(bf, *kid, pc));
        return acc;
    }
    case Formula::Kind::disj: {
        BForm::Ref acc = BForm::zero;
        for (const FormulaPtr& kid : s.kids()) acc = bf.join(acc, canonical_form(bf, *kid, pc));
        return acc;
    }
    case Formula::Kind::exists:
        fail_input("canonical form: quantifier in a quantifier-free sentence");
    }
    fail_input("canonical form: bad formula");
}

} // namespace bvm
