// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bvm/formula.hpp"

namespace bvm {

// The algebra of quantifier-free sentences modulo propositional equivalence,
// realized as reduced ordered binary decision diagrams: two sentences are
// equivalent iff they canonicalize to the same node. Variables are atomic
// sentences identified by their rendered form; the diagram order is the
// lexicographic order of those labels, which is stable no matter when a
// label first shows up. References are only meaningful within the manager
// that issued them.
class BForm {
public:
    using Ref = std::uint32_t;
    static constexpr Ref zero = 0;
    static constexpr Ref one = 1;

    BForm();

    Ref var(const std::string& label);
    Ref complement(Ref a);
    Ref meet(Ref a, Ref b);
    Ref join(Ref a, Ref b);
    // Empty sum is zero, empty product is one.
    Ref sum(const std::vector<Ref>& xs);
    Ref product(const std::vector<Ref>& xs);

    // Truth value under an assignment of the atomic sentences.
    bool eval(Ref a, const std::function<bool(const std::string&)>& truth) const;

    // Labels the node depends on, lexicographically.
    std::vector<std::string> support(Ref a) const;

    std::size_t node_count() const { return m_nodes.size(); }
    std::size_t var_count() const { return m_labels.size(); }
    const std::vector<std::string>& labels() const { return m_labels; }

private:
    struct Node {
        std::uint32_t var = 0;
        Ref lo = 0, hi = 0;
    };

    Ref mk(std::uint32_t var, Ref lo, Ref hi);
    Ref apply(bool is_meet, Ref a, Ref b);
    bool var_before(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t top_var(Ref a, Ref b) const;

    std::vector<Node> m_nodes; // [0]=zero, [1]=one (var fields unused)
    std::vector<std::string> m_labels;
    std::unordered_map<std::string, std::uint32_t> m_var_ids;
    std::unordered_map<std::uint64_t, Ref> m_unique;
    std::unordered_map<std::uint64_t, Ref> m_apply_memo;
    std::unordered_map<Ref, Ref> m_neg_memo;
};

// Canonical form of a quantifier-free sentence: atoms become variables
// labeled by their rendering under `pc` (pass an alias-free context so the
// labels are structural). Errors on quantifiers.
BForm::Ref canonical_form(BForm& bf, const Formula& s, const PrintContext& pc);

} // namespace bvm
