#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <type_traits>
#include <vector>

#include "sumsetlab/fp_words.hpp"
#include "sumsetlab/group_subset.hpp"
#include "sumsetlab/int_window_set.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

// ---------------------------------------------------------------------------
// Greedy IP extraction: iterate A_{k+1} = A_k ∩ a_k^-1·A_k, always taking
// the a_k in A_k that keeps the next stage largest (ties to the smallest
// element). A stage whose best intersection drops below
// widthFloor·|ambient| is the failure point.

struct IpExtractResult {
    bool success = false;
    std::vector<std::int64_t> base;        // a_0 .. a_{k-1}
    std::vector<std::int64_t> nestedSizes; // |A_0|, |A_1|, ...
    int verifiedDepth = 0;
    std::uint64_t wordsChecked = 0;
    // failure trace
    int failedStage = 0;            // the A_k that could not be made wide
    std::int64_t bestIntersection = 0;
    std::int64_t bestCandidate = 0; // canonical-least maximizer, if any
    bool haveCandidate = false;
};

template <typename Set>
IpExtractResult ipExtract(const Set& a, int targetDepth, const Rational& widthFloor) {
    if (a.empty()) throw Error(ErrorCode::InvalidInput, "ipExtract: A is empty");
    if (targetDepth < 1) throw Error(ErrorCode::InvalidInput, "ipExtract: depth must be >= 1");
    if (!(widthFloor > Rational(0)) || widthFloor > Rational(1))
        throw Error(ErrorCode::InvalidInput, "ipExtract: width floor must be in (0,1]");

    IpExtractResult res;
    Set cur = a;
    res.nestedSizes.push_back(cur.count());
    const std::int64_t ambient = a.universeSize();
    auto wide = [&](std::int64_t size) {
        return static_cast<__int128>(size) * widthFloor.den >= static_cast<__int128>(widthFloor.num) * ambient;
    };

    for (int k = 0; k < targetDepth; ++k) {
        std::int64_t bestScore = -1, bestElem = 0;
        bool have = false;
        cur.forEach([&](std::int64_t cand) {
            for (std::int64_t used : res.base)
                if (used == cand) return;
            std::int64_t s = cur.scoreLeftInverseTranslate(cur, cand);
            if (s > bestScore) { bestScore = s; bestElem = cand; have = true; }
        });
        if (!have || !wide(bestScore)) {
            res.failedStage = k + 1;
            res.bestIntersection = have ? bestScore : 0;
            res.bestCandidate = bestElem;
            res.haveCandidate = have;
            return res;
        }
        res.base.push_back(bestElem);
        cur.restrictLeftInverseTranslate(cur, bestElem);
        res.nestedSizes.push_back(cur.count());
    }

    FpVerdict v = verifyFP(res.base, a, targetDepth);
    if (!v.ok)
        throw Error(ErrorCode::InvalidInput, "ipExtract: internal FP verification failed (corrupt set state)");
    res.success = true;
    res.verifiedDepth = targetDepth;
    res.wordsChecked = v.wordsChecked;
    return res;
}

// ---------------------------------------------------------------------------
// Nathanson decomposition F_1 ... F_n · B ⊆ A. Round r picks m elements
// inside the previous round's B (round 1 inside A), so each F_r is a subset
// of A and B is a finite intersection of left translates intersected with
// A. Selection is a deterministic beam search over pick prefixes ordered by
// intersection size (beam width 1 is the plain stepwise greedy; the wider
// default recovers the density the stepwise rule drops on some dense sets).

inline constexpr int kNathansonBeamWidth = 32;

namespace detail {

// Scoring backends: integers score translates by shifted popcount directly;
// group subsets precompute each candidate's translate once per round.
struct ZTranslateScorer {
    const IntWindowSet* ambient;
    const std::vector<std::int64_t>* cands;
    std::int64_t score(const IntWindowSet& w, std::size_t i) const {
        return w.scoreLeftInverseTranslate(*ambient, (*cands)[i]);
    }
    void apply(IntWindowSet& w, std::size_t i) const {
        w.restrictLeftInverseTranslate(*ambient, (*cands)[i]);
    }
};

struct GroupTranslateScorer {
    std::vector<GroupSubset> cache;
    GroupTranslateScorer(const GroupSubset& ambient, const std::vector<std::int64_t>& cands) {
        cache.reserve(cands.size());
        for (std::int64_t h : cands) cache.push_back(ambient.leftInverseTranslate(h));
    }
    std::int64_t score(const GroupSubset& w, std::size_t i) const { return w.intersectionCount(cache[i]); }
    void apply(GroupSubset& w, std::size_t i) const { w.intersectWith(cache[i]); }
};

inline ZTranslateScorer makeScorer(const IntWindowSet& ambient, const std::vector<std::int64_t>& cands) {
    return ZTranslateScorer{&ambient, &cands};
}
inline GroupTranslateScorer makeScorer(const GroupSubset& ambient, const std::vector<std::int64_t>& cands) {
    return GroupTranslateScorer(ambient, cands);
}

template <typename Set>
struct RoundPick {
    std::vector<std::size_t> picks;      // candidate indices in pick order
    std::vector<std::int64_t> values;    // the picked elements, same order
    Set w;
};

// Best m-element pick inside `ambient`, maximizing |ambient ∩ h_1^-1 ambient
// ∩ ... ∩ h_m^-1 ambient|. Returns false when fewer than m distinct
// candidates exist.
template <typename Set>
bool nathansonRound(const Set& ambient, int m, int beamWidth, RoundPick<Set>& best) {
    std::vector<std::int64_t> cands = ambient.values();
    if (static_cast<int>(cands.size()) < m) return false;
    auto scorer = makeScorer(ambient, cands);

    std::vector<RoundPick<Set>> beam{RoundPick<Set>{{}, {}, ambient}};
    for (int stage = 0; stage < m; ++stage) {
        // (score desc, parent asc, candidate asc), deduplicated by pick set.
        struct Ext {
            std::int64_t score;
            std::size_t parent, cand;
        };
        std::vector<Ext> exts;
        for (std::size_t p = 0; p < beam.size(); ++p)
            for (std::size_t i = 0; i < cands.size(); ++i) {
                bool used = false;
                for (std::size_t u : beam[p].picks)
                    if (u == i) { used = true; break; }
                if (used) continue;
                exts.push_back(Ext{scorer.score(beam[p].w, i), p, i});
            }
        std::sort(exts.begin(), exts.end(), [](const Ext& a, const Ext& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.parent != b.parent) return a.parent < b.parent;
            return a.cand < b.cand;
        });
        std::vector<RoundPick<Set>> next;
        std::set<std::vector<std::size_t>> seen;
        for (const Ext& e : exts) {
            if (static_cast<int>(next.size()) >= beamWidth) break;
            std::vector<std::size_t> key = beam[e.parent].picks;
            key.push_back(e.cand);
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) continue;
            RoundPick<Set> child = beam[e.parent];
            child.picks.push_back(e.cand);
            scorer.apply(child.w, e.cand);
            next.push_back(std::move(child));
        }
        if (next.empty()) return false;
        beam = std::move(next);
    }
    best = beam.front();
    for (std::size_t p : best.picks) best.values.push_back(cands[p]);
    return true;
}

} // namespace detail

struct NathansonResult {
    bool success = false;
    std::vector<std::vector<std::int64_t>> parts; // F_1 .. F_n
    std::vector<std::int64_t> bValues;
    Rational bDensity;           // |B| / |ambient universe|
    int rounds = 0;
    int partSize = 0;
    int failedRound = 0;         // nonzero when fewer than m picks were possible
    bool containmentVerified = false;
};

template <typename Set>
bool nathansonContainmentHolds(const Set& a, const std::vector<std::vector<std::int64_t>>& parts,
                               const std::vector<std::int64_t>& bValues) {
    for (const auto& part : parts)
        for (std::int64_t f : part)
            if (!a.contains(f)) return false;
    const std::uint64_t budget = enumerationBudget();
    std::vector<std::int64_t> prefixes{a.identityElem()};
    for (const auto& part : parts) {
        if (prefixes.size() * part.size() > budget)
            throw Error(ErrorCode::CapExceeded, "decomposition has more than " + std::to_string(budget) +
                                                    " prefix products to verify");
        std::vector<std::int64_t> next;
        next.reserve(prefixes.size() * part.size());
        for (std::int64_t p : prefixes)
            for (std::int64_t f : part)
                next.push_back(a.mulElem(p, f));
        prefixes = std::move(next);
    }
    for (std::int64_t p : prefixes)
        for (std::int64_t b : bValues)
            if (!a.contains(a.mulElem(p, b))) return false;
    return true;
}

namespace detail {

// Density denominator for the produced B. Integer windows count only the
// sub-window where every composed translate is defined; groups have no
// clipping.
inline Rational nathansonDensity(const IntWindowSet& a,
                                 const std::vector<std::vector<std::int64_t>>& parts,
                                 std::int64_t count) {
    std::int64_t plus = 0, minus = 0;
    for (const auto& part : parts) {
        if (part.empty()) continue;
        std::int64_t mx = part.front(), mn = part.front();
        for (std::int64_t h : part) {
            mx = std::max(mx, h);
            mn = std::min(mn, h);
        }
        plus += std::max<std::int64_t>(0, mx);
        minus += std::max<std::int64_t>(0, -mn);
    }
    std::int64_t valid = std::max<std::int64_t>(1, a.windowLen() - plus - minus);
    return Rational(count, valid);
}

inline Rational nathansonDensity(const GroupSubset& a, const std::vector<std::vector<std::int64_t>>&,
                                 std::int64_t count) {
    return Rational(count, a.universeSize());
}

} // namespace detail

template <typename Set>
NathansonResult nathansonDecompose(const Set& a, int n, int m, const Rational& widthFloor) {
    if (n < 1 || m < 1) throw Error(ErrorCode::InvalidInput, "nathanson: n and m must be >= 1");
    NathansonResult res;
    res.rounds = n;
    res.partSize = m;

    Set ambient = a;
    for (int round = 1; round <= n; ++round) {
        detail::RoundPick<Set> pick{{}, {}, ambient};
        if (!detail::nathansonRound(ambient, m, kNathansonBeamWidth, pick)) {
            res.failedRound = round;
            res.bDensity = Rational(0, 1);
            return res;
        }
        res.parts.push_back(pick.values);
        ambient = std::move(pick.w);
    }

    res.bValues = ambient.values();
    res.bDensity = detail::nathansonDensity(a, res.parts, ambient.count());
    res.success = res.bDensity >= widthFloor;
    if (res.success) {
        res.containmentVerified = nathansonContainmentHolds(a, res.parts, res.bValues);
        if (!res.containmentVerified)
            throw Error(ErrorCode::InvalidInput, "nathanson: internal containment verification failed");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Productset search: staircase phase (b_i·c_j ∈ A for i <= j, greedy by
// compatible continuations) followed by grid extraction, which finds the
// largest index subset whose lower triangle also multiplies into A.

struct ProductsetResult {
    bool success = false;
    int requestedK = 0;
    int achievedK = 0; // size of the largest grid found
    std::vector<std::int64_t> bSide, cSide;
    // (b, x, y) with b = x·y^-1, x,y in A; present in constrained mode.
    std::vector<std::array<std::int64_t, 3>> bWitnesses;
    int staircaseLength = 0;
    bool constrained = false;
};

namespace detail {

// Max clique on an undirected graph given as adjacency bitsets, by plain
// branch and bound in canonical vertex order.
std::vector<int> maxCliqueVertices(const std::vector<std::vector<char>>& adj);

} // namespace detail

template <typename Set>
ProductsetResult productsetSearch(const Set& a, int k, bool constrainB, int staircaseCap = 256) {
    if (k < 1) throw Error(ErrorCode::InvalidInput, "productset: k must be >= 1");
    ProductsetResult res;
    res.requestedK = k;
    res.constrained = constrainB;
    if (a.empty()) return res;

    // Candidate pool for the b side, ascending; witnesses in constrained mode.
    std::vector<std::int64_t> pool;
    std::map<std::int64_t, std::array<std::int64_t, 2>> witness;
    if (constrainB) {
        a.forEach([&](std::int64_t x) {
            a.forEach([&](std::int64_t y) {
                std::int64_t b = a.mulElem(x, a.invElem(y));
                witness.try_emplace(b, std::array<std::int64_t, 2>{x, y});
            });
        });
        for (const auto& [b, w] : witness) pool.push_back(b);
    } else {
        if constexpr (std::is_same_v<Set, IntWindowSet>) {
            // Any b with a compatible c lies in the difference range: b + c
            // must land back inside the window.
            for (std::int64_t v = a.lo() - a.hi(); v <= a.hi() - a.lo(); ++v) pool.push_back(v);
        } else {
            for (std::int64_t v = 0; v < a.universeSize(); ++v) pool.push_back(v);
        }
    }

    // Extending by b constrains all later c's; extending by c constrains
    // nothing ahead, only the phase-2 grid. The greedy therefore scores b
    // first by compatibility with the c's already placed (that is what a
    // grid will need) and then by the surviving continuation count.
    std::vector<std::int64_t> bs, cs;
    std::set<std::int64_t> usedB;
    Set compat = a;
    while (static_cast<int>(bs.size()) < staircaseCap) {
        std::int64_t bestBack = -1, bestFwd = 0, bestB = 0;
        bool have = false;
        for (std::int64_t b : pool) {
            if (usedB.count(b)) continue;
            std::int64_t back = 0;
            for (std::int64_t c : cs)
                if (a.contains(a.mulElem(b, c))) ++back;
            if (back < bestBack) continue;
            std::int64_t fwd = compat.scoreLeftInverseTranslate(a, b);
            if (fwd < 1) continue;
            if (back > bestBack || fwd > bestFwd) {
                bestBack = back;
                bestFwd = fwd;
                bestB = b;
                have = true;
            }
        }
        if (!have) break;
        bs.push_back(bestB);
        usedB.insert(bestB);
        compat.restrictLeftInverseTranslate(a, bestB);
        std::int64_t c = compat.smallest();
        cs.push_back(c);
        compat.remove(c);
    }
    const int L = static_cast<int>(bs.size());
    res.staircaseLength = L;
    if (L == 0) return res;

    // Grid extraction: the staircase guarantees the upper triangle and the
    // diagonal; a full grid is a clique of the lower-triangle compatibility
    // graph.
    std::vector<std::vector<char>> adj(L, std::vector<char>(L, 0));
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < i; ++j) {
            bool ok = a.contains(a.mulElem(bs[i], cs[j]));
            adj[i][j] = adj[j][i] = ok ? 1 : 0;
        }
    std::vector<int> clique = detail::maxCliqueVertices(adj);
    res.achievedK = static_cast<int>(clique.size());

    if (res.achievedK < k) {
        if (L >= staircaseCap)
            throw Error(ErrorCode::RamseyBudgetExceeded,
                        "staircase hit the cap of " + std::to_string(staircaseCap) + " before a " + std::to_string(k) + "-grid appeared");
        return res;
    }
    clique.resize(static_cast<std::size_t>(k));
    for (int i : clique) {
        res.bSide.push_back(bs[i]);
        res.cSide.push_back(cs[i]);
    }
    // Exhaustive certificate check.
    for (std::int64_t b : res.bSide)
        for (std::int64_t c : res.cSide)
            if (!a.contains(a.mulElem(b, c)))
                throw Error(ErrorCode::InvalidInput, "productset: internal grid verification failed");
    if (constrainB)
        for (std::int64_t b : res.bSide) {
            const auto& w = witness.at(b);
            res.bWitnesses.push_back({b, w[0], w[1]});
        }
    res.success = true;
    return res;
}

// ---------------------------------------------------------------------------
// Product-free checking and maximum product-free search over finite groups.

struct ProductFreeVerdict {
    bool productFree = true;
    std::int64_t b = 0, c = 0, product = 0; // canonical-least witness when not
};

ProductFreeVerdict productFreeCheck(const GroupSubset& a);

struct MaxProductFreeResult {
    std::int64_t size = 0;
    std::vector<std::int64_t> witness;
    bool exact = true;
};

MaxProductFreeResult maxProductFree(const GroupTable& g, int exactBound = 24, std::uint64_t seed = 0);

} // namespace sumsetlab
