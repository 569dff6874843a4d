// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "bvm/formula.hpp"
#include "bvm/ids.hpp"

namespace bvm {

// Definition-style names: a level-(k+1) name is a total assignment of one
// sentence to every level-k name (in the canonical enumeration order the
// caller maintains). Level 1 is the single empty assignment. The sentences
// may mention lower-level tilde names as constants and unary predicates;
// ground names and set constants are rejected.
class TildePool {
public:
    TildePool();

    TildeId empty_tilde() const { return 0; }
    TildeId mk_tilde(unsigned level, std::vector<FormulaPtr> assignment, const PrintContext& pc);
    unsigned level(TildeId id) const;
    const std::vector<FormulaPtr>& assignment(TildeId id) const;
    const std::string& repr(TildeId id) const;
    bool canon_less(TildeId a, TildeId b) const; // (level, rendered form)
    std::size_t size() const;

private:
    struct Node {
        unsigned level = 1;
        std::vector<FormulaPtr> assignment;
        std::string repr;
    };

    const Node& node(TildeId id) const;
    void validate(unsigned level, const Formula& f) const;

    mutable std::mutex m_mu;
    std::deque<Node> m_nodes;
    std::unordered_map<std::string, TildeId> m_index;
};

} // namespace bvm
