// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/tilde.hpp"

namespace bvm {

TildePool::TildePool() {
    Node empty;
    empty.repr = "tilde1{}";
    m_nodes.push_back(std::move(empty));
    m_index.emplace("tilde1{}", 0);
}

const TildePool::Node& TildePool::node(TildeId id) const {
    std::lock_guard<std::mutex> lock(m_mu);
    return m_nodes.at(id);
}

void TildePool::validate(unsigned level, const Formula& f) const {
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::mem:
    case Formula::Kind::pred: {
        std::vector<const Term*> terms = {&f.lhs()};
        if (f.kind() != Formula::Kind::pred)
            terms.push_back(&f.rhs());
        for (const Term* t : terms) {
            if (t->kind == Term::Kind::name_ref || t->kind == Term::Kind::set_ref)
                fail_input("tilde assignments may only mention tilde names and variables");
            if (t->kind == Term::Kind::tilde_ref) {
                std::lock_guard<std::mutex> lock(m_mu);
                if (t->tilde >= m_nodes.size())
                    fail_input("tilde reference out of range");
                if (m_nodes[t->tilde].level >= level)
                    fail_input("tilde assignment refers to a name of level " +
                               std::to_string(m_nodes[t->tilde].level) +
                               " from a level " + std::to_string(level) + " name");
            }
        }
        break;
    }
    case Formula::Kind::neg:
    case Formula::Kind::conj:
    case Formula::Kind::disj:
    case Formula::Kind::exists:
        for (const auto& k : f.kids())
            validate(level, *k);
        break;
    }
}

TildeId TildePool::mk_tilde(unsigned level, std::vector<FormulaPtr> assignment,
                            const PrintContext& pc) {
    if (level < 2)
        fail_input("tilde levels above 1 carry assignments; level 1 is the empty name");
    for (const auto& f : assignment) {
        if (!f->is_sentence())
            fail_input("tilde assignment formula has free variables");
        validate(level, *f);
    }

    Node node;
    node.level = level;
    node.repr = "tilde" + std::to_string(level) + "{";
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (i)
            node.repr += ',';
        node.repr += std::to_string(i);
        node.repr += "->";
        node.repr += print_formula(*assignment[i], pc);
    }
    node.repr += '}';
    node.assignment = std::move(assignment);

    std::lock_guard<std::mutex> lock(m_mu);
    auto it = m_index.find(node.repr);
    if (it != m_index.end())
        return it->second;
    TildeId id = static_cast<TildeId>(m_nodes.size());
    m_index.emplace(node.repr, id);
    m_nodes.push_back(std::move(node));
    return id;
}

unsigned TildePool::level(TildeId id) const { return node(id).level; }
const std::vector<FormulaPtr>& TildePool::assignment(TildeId id) const {
    return node(id).assignment;
}
const std::string& TildePool::repr(TildeId id) const { return node(id).repr; }

bool TildePool::canon_less(TildeId a, TildeId b) const {
    const Node& na = node(a);
    const Node& nb = node(b);
    if (na.level != nb.level)
        return na.level < nb.level;
    return na.repr < nb.repr;
}

std::size_t TildePool::size() const {
    std::lock_guard<std::mutex> lock(m_mu);
    return m_nodes.size();
}

} // namespace bvm
