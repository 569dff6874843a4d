// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include "bvm/quotient.hpp"

#include <algorithm>
#include <numeric>

#include "bvm/error.hpp"

namespace bvm {

namespace {

std::size_t find_root(std::vector<std::size_t>& up, std::size_t i) {
    while (up[i] != i) {
        up[i] = up[up[i]];
        i = up[i];
    }
    return i;
}

} // namespace

QuotientModel quotient_model(ValueCtx& ctx, const Ultrafilter& f,
                             const std::vector<NameId>& names, QuotientMode mode) {
    QuotientModel q;
    q.mode = mode;
    q.filter = f;
    q.names = names;
    const std::size_t n = names.size();
    const NamePool& pool = *ctx.workspace().names;

    auto related = [&](AtomKind k, NameId x, NameId y) {
        BoolElem v = mode == QuotientMode::star ? ctx.value_star_atomic(k, x, y)
                                                : ctx.value_atomic(k, x, y);
        return f.contains(v);
    };

    // Union by the equality relation, then verify it really is an
    // equivalence on this list instead of trusting the laws.
    std::vector<std::size_t> up(n);
    std::iota(up.begin(), up.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (names[i] == names[j]) fail_input("quotient: duplicate name in list");
            if (related(AtomKind::eq, names[i], names[j]))
                up[find_root(up, i)] = find_root(up, j);
        }
    }
    q.equivalence_ok = true;
    for (std::size_t i = 0; i < n && q.equivalence_ok; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool same = find_root(up, i) == find_root(up, j);
            if (same != related(AtomKind::eq, names[i], names[j])) {
                q.equivalence_ok = false;
                break;
            }
        }

    // Classes ordered by their canonically least member; members canonical.
    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find_root(up, i)].push_back(i);
    std::vector<std::vector<NameId>> classes;
    for (auto& g : groups) {
        if (g.empty()) continue;
        std::vector<NameId> members;
        for (std::size_t i : g) members.push_back(names[i]);
        std::sort(members.begin(), members.end(),
                  [&](NameId a, NameId b) { return pool.canon_less(a, b); });
        classes.push_back(std::move(members));
    }
    std::sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
        return pool.canon_less(a.front(), b.front());
    });
    q.classes = std::move(classes);

    q.class_of.assign(n, 0);
    for (std::size_t c = 0; c < q.classes.size(); ++c)
        for (NameId m : q.classes[c])
            for (std::size_t i = 0; i < n; ++i)
                if (names[i] == m) q.class_of[i] = c;

    const std::size_t k = q.classes.size();
    q.e_bits.assign((k * k + 63) / 64, 0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (related(AtomKind::mem, q.classes[a].front(), q.classes[b].front())) {
                std::size_t i = a * k + b;
                q.e_bits[i >> 6] |= std::uint64_t{1} << (i & 63);
            }
    return q;
}

ExtensionalityReport check_extensionality(const QuotientModel& q) {
    ExtensionalityReport r;
    const std::size_t k = q.classes.size();
    for (std::size_t a = 0; a < k && r.pass; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            bool same_members = true;
            for (std::size_t c = 0; c < k && same_members; ++c)
                if (q.edge(c, a) != q.edge(c, b)) same_members = false;
            if (same_members) {
                r.pass = false;
                r.violation = {a, b};
                break;
            }
        }
    }
    return r;
}

} // namespace bvm
