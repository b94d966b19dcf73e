#pragma once

// Test-side oracles: deliberately naive, independent reimplementations used
// to freeze expected values. None of these share code with the library
// paths they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "sumsetlab/group.hpp"
#include "sumsetlab/group_subset.hpp"
#include "sumsetlab/int_window_set.hpp"
#include "sumsetlab/rng.hpp"

namespace oracles {

using sumsetlab::GroupSubset;
using sumsetlab::GroupTable;
using sumsetlab::IntWindowSet;

// Max over all m with [m+1, m+n] inside [lo, hi] of |A ∩ [m+1, m+n]|,
// counted by direct membership tests.
inline std::int64_t slidingWindowMax(const IntWindowSet& a, std::int64_t n) {
    std::int64_t best = -1;
    for (std::int64_t m = a.lo() - 1; m + n <= a.hi(); ++m) {
        std::int64_t c = 0;
        for (std::int64_t v = m + 1; v <= m + n; ++v)
            if (a.contains(v)) ++c;
        best = std::max(best, c);
    }
    return best;
}

// All 2^|base| - 1 subset products in index order via bitmask enumeration.
template <typename Mul>
inline std::vector<std::int64_t> fpValuesByMask(const std::vector<std::int64_t>& base, int maxLen, Mul&& mul) {
    std::vector<std::int64_t> values;
    const int n = static_cast<int>(base.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > maxLen) continue;
        bool first = true;
        std::int64_t v = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                v = first ? base[i] : mul(v, base[i]);
                first = false;
            }
        values.push_back(v);
    }
    return values;
}

// Largest depth d <= dmax admitting a base a_0..a_{d-1} with every nested
// set A_{k+1} = A_k ∩ (A_k - a_k) nonempty, by exhaustive recursion.
// Integer windows only; meant for small windows.
inline int maxIpDepthExhaustive(const IntWindowSet& a, int dmax) {
    int best = 0;
    std::vector<std::int64_t> base;
    std::function<void(const IntWindowSet&)> rec = [&](const IntWindowSet& cur) {
        best = std::max(best, static_cast<int>(base.size()));
        if (static_cast<int>(base.size()) == dmax) return;
        cur.forEach([&](std::int64_t cand) {
            for (std::int64_t u : base)
                if (u == cand) return;
            IntWindowSet next = cur;
            next.restrictLeftInverseTranslate(cur, cand);
            if (next.empty()) return;
            base.push_back(cand);
            rec(next);
            base.pop_back();
        });
    };
    rec(a);
    return best;
}

// True maximum k (capped at kMax) with |B| = |C| = k and B·C ⊆ A, B drawn
// from bPool and C from A, by branch and bound over B in canonical order.
template <typename Set>
inline int maxBalancedGrid(const Set& a, const std::vector<std::int64_t>& bPool, int kMax) {
    int best = 0;
    int chosen = 0;
    std::function<void(std::size_t, const Set&)> rec = [&](std::size_t from, const Set& compat) {
        best = std::max<std::int64_t>(best, std::min<std::int64_t>(chosen, compat.count()));
        if (best >= kMax || chosen >= kMax) return;
        for (std::size_t i = from; i < bPool.size(); ++i) {
            if (chosen + 1 + static_cast<int>(bPool.size() - i - 1) <= best) break;
            Set next = compat;
            next.restrictLeftInverseTranslate(a, bPool[i]);
            if (static_cast<int>(next.count()) <= best) continue; // final k <= |compat|
            ++chosen;
            rec(i + 1, next);
            --chosen;
            if (best >= kMax) return;
        }
    };
    rec(0, a);
    return std::min(best, kMax);
}

// Maximum product-free subset size by full subset enumeration (|G| <= 20).
inline std::int64_t bruteMaxProductFree(const GroupTable& g) {
    const int n = g.order();
    std::int64_t best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) {
            if (!(mask & (1u << b))) continue;
            for (int c = 0; c < n && ok; ++c) {
                if (!(mask & (1u << c))) continue;
                if (mask & (1u << g.mul(b, c))) ok = false;
            }
        }
        if (ok) best = std::max<std::int64_t>(best, __builtin_popcount(mask));
    }
    return best;
}

// Plain exhaustive ladder/equation search with no pruning beyond constraint
// propagation; small relations only.
inline int brutePatternIndex(const std::vector<std::vector<char>>& r, bool ladder) {
    const int l = static_cast<int>(r.size());
    const int w = static_cast<int>(r[0].size());
    int best = 0;
    std::vector<int> as, bs;
    std::function<void()> rec = [&]() {
        best = std::max(best, static_cast<int>(as.size()));
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < w; ++b) {
                bool ok = ladder ? r[a][b] : !r[a][b];
                for (std::size_t i = 0; i < as.size() && ok; ++i) {
                    if (!r[as[i]][b]) ok = false;          // old a, new b: i < j
                    if (ladder && r[a][bs[i]]) ok = false; // new a, old b must be negative
                }
                if (!ok) continue;
                as.push_back(a);
                bs.push_back(b);
                rec();
                as.pop_back();
                bs.pop_back();
            }
    };
    rec();
    return best;
}

// Seeded subset of exactly k elements of [0, n).
inline std::vector<std::int64_t> randomSubset(std::int64_t n, std::int64_t k, std::uint64_t seed) {
    sumsetlab::SplitMix64 rng(seed);
    std::vector<std::int64_t> all(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    for (std::int64_t i = 0; i < k; ++i) {
        std::uint64_t j = static_cast<std::uint64_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
        std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
    }
    all.resize(static_cast<std::size_t>(k));
    std::sort(all.begin(), all.end());
    return all;
}

// Bernoulli(p = num/den) subset of the window, seeded.
inline IntWindowSet randomWindowSet(std::int64_t lo, std::int64_t hi, int num, int den, std::uint64_t seed) {
    sumsetlab::SplitMix64 rng(seed);
    IntWindowSet s(lo, hi);
    for (std::int64_t v = lo; v <= hi; ++v)
        if (rng.below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num)) s.add(v);
    return s;
}

} // namespace oracles
