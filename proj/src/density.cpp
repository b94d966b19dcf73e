#include "sumsetlab/density.hpp"

#include <algorithm>

namespace sumsetlab {

namespace {

// prefix[i] = |A ∩ [lo, lo+i-1]|, so |A ∩ [x,y]| is prefix[y-lo+1] - prefix[x-lo].
std::vector<std::int64_t> prefixCounts(const IntWindowSet& a) {
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(a.windowLen()) + 1, 0);
    a.forEach([&](std::int64_t v) { prefix[static_cast<std::size_t>(v - a.lo() + 1)] = 1; });
    for (std::size_t i = 1; i < prefix.size(); ++i) prefix[i] += prefix[i - 1];
    return prefix;
}

int tailStart(int maxIndex) { return maxIndex / 2; }

// |A ∩ F_n| for each tail index, using prefix sums for interval-shaped
// families and membership scans for explicit ones.
std::vector<std::int64_t> tailCounts(const IntWindowSet& a, const FolnerFamily& f,
                                     const std::vector<int>& tail) {
    std::vector<std::int64_t> counts;
    counts.reserve(tail.size());
    if (f.kind() == FolnerFamily::Kind::ExplicitSets) {
        for (int n : tail) counts.push_back(f.countIn(a, n));
        return counts;
    }
    auto prefix = prefixCounts(a);
    for (int n : tail) {
        auto [x, y] = f.intervalBounds(n);
        counts.push_back(prefix[static_cast<std::size_t>(y - a.lo() + 1)] -
                         prefix[static_cast<std::size_t>(x - a.lo())]);
    }
    return counts;
}

} // namespace

Rational folnerDefect(const FolnerFamily& f, std::int64_t g, int n) {
    return f.defect(g, n);
}

DensityReport upperDensity(const IntWindowSet& a, const FolnerFamily& f) {
    const int maxIndex = f.maxIndex();
    f.requireInsideWindow(a, maxIndex);
    std::vector<int> tail;
    for (int n = tailStart(maxIndex); n <= maxIndex; ++n) tail.push_back(n);
    auto counts = tailCounts(a, f, tail);
    DensityReport best;
    best.mode = DensityMode::Upper;
    best.value = Rational(-1);
    for (std::size_t i = 0; i < tail.size(); ++i) {
        Rational v(counts[i], f.setSize(tail[i]));
        if (v > best.value) { best.value = v; best.witnessIndex = tail[i]; }
    }
    return best;
}

DensityReport upperDensity(const GroupSubset& a) {
    DensityReport r;
    r.mode = DensityMode::Upper;
    r.value = Rational(a.count(), a.universeSize());
    r.witnessIndex = 0;
    return r;
}

DensityReport banachDensityWindowed(const IntWindowSet& a, std::int64_t n) {
    if (n < 1 || n > a.windowLen())
        throw Error(ErrorCode::InvalidInput, "window length n must be in [1, window length]");
    auto prefix = prefixCounts(a);
    DensityReport best;
    best.mode = DensityMode::Banach;
    std::int64_t bestCount = -1;
    // m ranges so that [m+1, m+n] stays inside [lo, hi].
    for (std::int64_t m = a.lo() - 1; m + n <= a.hi(); ++m) {
        std::int64_t c = prefix[static_cast<std::size_t>(m + n - a.lo() + 1)] - prefix[static_cast<std::size_t>(m + 1 - a.lo())];
        if (c > bestCount) { bestCount = c; best.witnessIndex = m; }
    }
    best.value = Rational(bestCount, n);
    return best;
}

AveragingReport averagingCheck(const IntWindowSet& a, const FolnerFamily& f, std::int64_t n) {
    if (n < 1 || n > a.windowLen())
        throw Error(ErrorCode::WindowTooSmall, "averaging window length exceeds the ambient window");
    AveragingReport rep;
    rep.upper = upperDensity(a, f).value;
    DensityReport banach = banachDensityWindowed(a, n);
    rep.witnessM = banach.witnessIndex;
    rep.windowDensity = banach.value;
    rep.windowCount = a.countInRange(rep.witnessM + 1, rep.witnessM + n);
    rep.ok = rep.windowDensity >= rep.upper - Rational(1, n);
    return rep;
}

namespace {

MeasureApprox diagonalMeasure(const std::vector<std::vector<std::int64_t>>& requests, int depth,
                              const std::vector<int>& tailIndices,
                              const std::vector<std::int64_t>& sizes,
                              const std::vector<std::vector<std::int64_t>>& counts /* [set][tailPos]; set 0 is A */) {
    // Stage 0: keep the tail positions where A attains its maximal frequency.
    std::vector<int> live;
    Rational best(-1);
    for (std::size_t t = 0; t < tailIndices.size(); ++t) {
        Rational v(counts[0][t], sizes[t]);
        if (v > best) best = v;
    }
    for (std::size_t t = 0; t < tailIndices.size(); ++t)
        if (Rational(counts[0][t], sizes[t]) == best) live.push_back(static_cast<int>(t));

    MeasureApprox out;
    out.requests = requests;
    out.depth = depth;
    out.valueOfA = best;
    out.diagIndices.push_back(tailIndices[live.front()]);

    const int nReq = static_cast<int>(requests.size());
    for (int stage = 1; stage <= depth; ++stage) {
        if (nReq > 0) {
            int j = (stage - 1) % nReq;
            Rational mx(-1);
            for (int t : live) {
                Rational v(counts[static_cast<std::size_t>(j) + 1][t], sizes[t]);
                if (v > mx) mx = v;
            }
            std::vector<int> next;
            for (int t : live)
                if (Rational(counts[static_cast<std::size_t>(j) + 1][t], sizes[t]) == mx) next.push_back(t);
            live = std::move(next);
        }
        std::size_t pick = std::min<std::size_t>(static_cast<std::size_t>(stage), live.size() - 1);
        out.diagIndices.push_back(tailIndices[live[pick]]);
    }

    std::size_t finalPos = static_cast<std::size_t>(live[std::min<std::size_t>(static_cast<std::size_t>(depth), live.size() - 1)]);
    out.finalIndex = tailIndices[finalPos];
    out.finalSetSize = sizes[finalPos];
    out.valueOfA = Rational(counts[0][finalPos], sizes[finalPos]);
    for (int j = 0; j < nReq; ++j)
        out.values.push_back(Rational(counts[static_cast<std::size_t>(j) + 1][finalPos], sizes[finalPos]));
    return out;
}

} // namespace

MeasureApprox bergMeasureApprox(const IntWindowSet& a,
                                const std::vector<std::vector<std::int64_t>>& translateLists,
                                const FolnerFamily& f, int depth) {
    if (translateLists.size() > 64)
        throw Error(ErrorCode::InvalidInput, "at most 64 requested intersections");
    if (depth < static_cast<int>(translateLists.size()))
        throw Error(ErrorCode::DepthInsufficient, "depth must be >= number of requested sets");
    const int maxIndex = f.maxIndex();
    f.requireInsideWindow(a, maxIndex);

    // Materialize each requested set A ∩ g_1·A ∩ ... ∩ g_r·A.
    std::vector<IntWindowSet> sets;
    sets.push_back(a);
    for (const auto& tuple : translateLists) {
        IntWindowSet s = a;
        for (std::int64_t g : tuple) s.intersectWith(a.translate(g).set);
        sets.push_back(std::move(s));
    }

    std::vector<int> tail;
    for (int n = tailStart(maxIndex); n <= maxIndex; ++n) tail.push_back(n);
    std::vector<std::int64_t> sizes;
    sizes.reserve(tail.size());
    for (int n : tail) sizes.push_back(f.setSize(n));
    std::vector<std::vector<std::int64_t>> counts(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s)
        counts[s] = tailCounts(sets[s], f, tail);
    return diagonalMeasure(translateLists, depth, tail, sizes, counts);
}

MeasureApprox bergMeasureApprox(const GroupSubset& a,
                                const std::vector<std::vector<std::int64_t>>& translateLists,
                                int depth) {
    if (translateLists.size() > 64)
        throw Error(ErrorCode::InvalidInput, "at most 64 requested intersections");
    if (depth < static_cast<int>(translateLists.size()))
        throw Error(ErrorCode::DepthInsufficient, "depth must be >= number of requested sets");
    // The whole-group family is constant, so every stage reads |S|/|G|.
    MeasureApprox out;
    out.requests = translateLists;
    out.depth = depth;
    out.finalIndex = 0;
    out.finalSetSize = a.universeSize();
    out.diagIndices.assign(static_cast<std::size_t>(depth) + 1, 0);
    out.valueOfA = Rational(a.count(), a.universeSize());
    for (const auto& tuple : translateLists) {
        GroupSubset s = a;
        for (std::int64_t g : tuple) s.intersectWith(a.leftTranslate(g));
        out.values.push_back(Rational(s.count(), a.universeSize()));
    }
    return out;
}

} // namespace sumsetlab
