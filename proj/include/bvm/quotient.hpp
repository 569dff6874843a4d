// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bvm/values.hpp"

namespace bvm {

enum class QuotientMode { star, induced };

// The model built from a finite list of names and an ultrafilter: names are
// identified when their equality value lies in the filter, and a class pair
// is in E when the membership value of representatives does. In raw (star)
// mode equality is identity, so classes are singletons and E is the raw
// entry relation.
struct QuotientModel {
    QuotientMode mode = QuotientMode::induced;
    Ultrafilter filter;
    std::vector<NameId> names;                // as given
    std::vector<std::size_t> class_of;        // aligned with names
    std::vector<std::vector<NameId>> classes; // members in canonical order
    std::vector<std::uint64_t> e_bits;        // classes x classes, row-major

    // Set when every within-class pair is related and every cross-class pair
    // is not; the partition is only meaningful if this holds (it follows
    // from the model laws, and is re-verified rather than assumed).
    bool equivalence_ok = false;

    bool edge(std::size_t a, std::size_t b) const {
        std::size_t i = a * classes.size() + b;
        return (e_bits[i >> 6] >> (i & 63)) & 1;
    }
};

QuotientModel quotient_model(ValueCtx& ctx, const Ultrafilter& f,
                             const std::vector<NameId>& names, QuotientMode mode);

// First pair of distinct classes with identical E-predecessor sets, if any.
struct ExtensionalityReport {
    bool pass = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

ExtensionalityReport check_extensionality(const QuotientModel& q);

} // namespace bvm
