// Copyright (c) 2026 the bvmlab authors. All rights reserved.
// Released under the Apache 2.0 license as described in the file LICENSE.
#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_map>
#include <vector>

#include "bvm/error.hpp"
#include "bvm/hf.hpp"

namespace bvm {

// Bounded definability over a finite transitive universe.
//
// Rather than enumerating formula trees (their number explodes long before
// interesting bounds), we run the enumeration on semantic states: the truth
// table of a subformula over all assignments of (v0, w1, .., wd) into U,
// together with its free-variable set. Two subformulas with the same table
// and the same free variables are interchangeable in every context and in
// the final harvest, so keeping one witness of minimal size per state loses
// nothing. Sizes follow the formula module's measure: eq/mem atoms 3,
// predicate atoms 2, not/exists add 1, and(..)/or(..) cost 1 plus the sum
// of their parts. N-ary junctions are handled with partial-chain states so
// that and(f,g,h) is reached at 1+|f|+|g|+|h|, not at the nested-binary
// price.

namespace {

struct DefState {
    std::uint8_t mask = 0; // free variables, bit i = v_i
    std::vector<std::uint64_t> bits;
};

std::string state_key(const DefState& st) {
    std::string key(1, static_cast<char>(st.mask));
    key.append(reinterpret_cast<const char*>(st.bits.data()), st.bits.size() * 8);
    return key;
}

bool get_bit(const std::vector<std::uint64_t>& bits, std::size_t i) {
    return (bits[i >> 6] >> (i & 63)) & 1;
}

void set_bit(std::vector<std::uint64_t>& bits, std::size_t i) {
    bits[i >> 6] |= std::uint64_t{1} << (i & 63);
}

struct ChainEntry {
    DefState st;
    bool closable = false; // true once the chain holds at least two parts
};

using StateMap = std::unordered_map<std::string, DefState>;
using ChainMap = std::unordered_map<std::string, ChainEntry>;

} // namespace

std::vector<std::vector<HfId>> definable_subsets(const HfPool& pool,
                                                 const std::vector<HfId>& universe,
                                                 const EnrichmentClass* a_class,
                                                 const DefOptions& opt) {
    const std::size_t n = universe.size();
    const unsigned nvars = 1 + opt.max_depth;
    for (HfId u : universe)
        for (HfId e : pool.elems(u))
            if (std::find(universe.begin(), universe.end(), e) == universe.end())
                fail_input("definable_subsets: universe not transitive at " + pool.repr(u));

    std::size_t tuples = 1;
    for (unsigned i = 0; i < nvars; ++i) {
        tuples *= n;
        if (n != 0 && tuples > (std::size_t{1} << 20))
            fail_bounds("definable_subsets: assignment table too large");
    }
    if (n == 0) tuples = 0;
    const std::size_t words = (tuples + 63) / 64;

    // Terms: variables first, then one constant per universe member.
    const std::size_t nterms = nvars + n;
    auto term_value = [&](std::size_t term, std::size_t assign) -> std::size_t {
        if (term < nvars) {
            std::size_t a = assign;
            for (std::size_t i = 0; i < term; ++i) a /= n;
            return a % n;
        }
        return term - nvars;
    };
    auto term_mask = [&](std::size_t term) -> std::uint8_t {
        return term < nvars ? static_cast<std::uint8_t>(1u << term) : 0;
    };

    std::unordered_map<std::string, unsigned> best; // state key -> first size
    std::vector<std::vector<DefState>> fresh(opt.size_bound + 1);
    std::size_t work = 0;
    auto charge = [&](std::size_t amount) {
        work += amount;
        if (work > opt.table_cap * 64)
            fail_bounds("definable_subsets: work cap exceeded");
    };

    auto admit = [&](DefState st, unsigned size) {
        std::string key = state_key(st);
        if (best.count(key)) return;
        if (best.size() >= opt.table_cap)
            fail_bounds("definable_subsets: state cap exceeded");
        best.emplace(std::move(key), size);
        fresh[size].push_back(std::move(st));
    };

    // Partial and/or chains by accumulated size of their parts (the closing
    // +1 is paid when the junction is formed).
    std::vector<ChainMap> chains_and(opt.size_bound + 1), chains_or(opt.size_bound + 1);
    std::size_t chain_states = 0;
    auto chain_admit = [&](std::vector<ChainMap>& chains, unsigned accum, DefState st, bool closable) {
        ChainMap& layer = chains[accum];
        std::string key = state_key(st);
        auto it = layer.find(key);
        if (it != layer.end()) {
            it->second.closable = it->second.closable || closable;
            return;
        }
        if (++chain_states > opt.table_cap)
            fail_bounds("definable_subsets: chain cap exceeded");
        layer.emplace(std::move(key), ChainEntry{std::move(st), closable});
    };

    for (unsigned size = 2; size <= opt.size_bound; ++size) {
        if (size == 2 && a_class) {
            for (std::size_t t = 0; t < nterms; ++t) {
                DefState st;
                st.mask = term_mask(t);
                st.bits.assign(words, 0);
                for (std::size_t a = 0; a < tuples; ++a)
                    if (a_class->contains(universe[term_value(t, a)])) set_bit(st.bits, a);
                charge(tuples + 1);
                admit(std::move(st), size);
            }
        }
        if (size == 3) {
            for (std::size_t t1 = 0; t1 < nterms; ++t1) {
                for (std::size_t t2 = 0; t2 < nterms; ++t2) {
                    DefState eq, mem;
                    eq.mask = mem.mask = static_cast<std::uint8_t>(term_mask(t1) | term_mask(t2));
                    eq.bits.assign(words, 0);
                    mem.bits.assign(words, 0);
                    for (std::size_t a = 0; a < tuples; ++a) {
                        std::size_t x = term_value(t1, a), y = term_value(t2, a);
                        if (x == y) set_bit(eq.bits, a);
                        if (pool.contains(universe[y], universe[x])) set_bit(mem.bits, a);
                    }
                    charge(2 * tuples + 2);
                    admit(std::move(eq), size);
                    admit(std::move(mem), size);
                }
            }
        }
        for (const DefState& f : fresh[size - 1]) {
            DefState neg;
            neg.mask = f.mask;
            neg.bits.resize(words);
            for (std::size_t w = 0; w < words; ++w) neg.bits[w] = ~f.bits[w];
            if (tuples & 63) neg.bits.back() &= (std::uint64_t{1} << (tuples & 63)) - 1;
            charge(words + 1);
            admit(std::move(neg), size);

            for (unsigned v = 0; v < nvars; ++v) {
                // exists v_v: disjunction over the v-th digit of the tuple.
                std::size_t stride = 1;
                for (unsigned i = 0; i < v; ++i) stride *= n;
                DefState ex;
                ex.mask = static_cast<std::uint8_t>(f.mask & ~(1u << v));
                ex.bits.assign(words, 0);
                for (std::size_t a = 0; a < tuples; ++a) {
                    std::size_t base = a - ((a / stride) % n) * stride;
                    for (std::size_t d = 0; d < n && !get_bit(ex.bits, a); ++d)
                        if (get_bit(f.bits, base + d * stride)) set_bit(ex.bits, a);
                }
                charge(tuples * (n ? n : 1) + 1);
                admit(std::move(ex), size);
            }
        }
        for (auto* chains : {&chains_and, &chains_or}) {
            for (const auto& [key, entry] : (*chains)[size - 1]) {
                (void)key;
                if (entry.closable) admit(entry.st, size);
            }
        }
        if (size + 1 > opt.size_bound) continue;
        for (auto* chains : {&chains_and, &chains_or}) {
            bool is_and = chains == &chains_and;
            for (const DefState& f : fresh[size])
                chain_admit(*chains, size, f, false);
            for (unsigned b = 2; b + 2 <= size; ++b) {
                for (const auto& [key, entry] : (*chains)[size - b]) {
                    (void)key;
                    for (const DefState& g : fresh[b]) {
                        DefState joined;
                        joined.mask = entry.st.mask | g.mask;
                        joined.bits.resize(words);
                        for (std::size_t w = 0; w < words; ++w)
                            joined.bits[w] = is_and ? (entry.st.bits[w] & g.bits[w])
                                                    : (entry.st.bits[w] | g.bits[w]);
                        charge(words + 1);
                        chain_admit(*chains, size, std::move(joined), true);
                    }
                }
            }
        }
    }

    // Harvest: states whose only free variable is v0 define a subset; read
    // it off the rows where every auxiliary variable is the first member.
    std::vector<std::vector<HfId>> out;
    for (unsigned size = 2; size <= opt.size_bound; ++size) {
        for (const DefState& st : fresh[size]) {
            if (st.mask & ~std::uint8_t{1}) continue;
            std::vector<HfId> subset;
            for (std::size_t i = 0; i < n; ++i)
                if (get_bit(st.bits, i)) subset.push_back(universe[i]);
            out.push_back(std::move(subset));
        }
    }
    std::sort(out.begin(), out.end(), [&](const std::vector<HfId>& a, const std::vector<HfId>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return pool.canon_less(a[i], b[i]);
        return false;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace bvm
