#pragma once

#include <cstdint>
#include <vector>

#include "sumsetlab/folner.hpp"
#include "sumsetlab/group_subset.hpp"
#include "sumsetlab/int_window_set.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

enum class DensityMode { Upper, Lower, Banach };

struct DensityReport {
    Rational value;
    std::int64_t witnessIndex = 0; // family index n, or window start m for Banach
    DensityMode mode = DensityMode::Upper;
};

// 1 - |F_n ∩ g·F_n| / |F_n|, exact.
Rational folnerDefect(const FolnerFamily& f, std::int64_t g, int n);

// limsup proxy: max of |A ∩ F_n| / |F_n| over the tail n in
// [maxIndex/2, maxIndex], ties to the smaller index.
DensityReport upperDensity(const IntWindowSet& a, const FolnerFamily& f);
DensityReport upperDensity(const GroupSubset& a); // whole-group family

// Exact max over all m with [m+1, m+n] inside the window of
// |A ∩ [m+1, m+n]| / n, by sliding count.
DensityReport banachDensityWindowed(const IntWindowSet& a, std::int64_t n);

struct AveragingReport {
    bool ok = false;
    std::int64_t witnessM = 0;   // maximizing window start
    std::int64_t windowCount = 0;
    Rational windowDensity;      // windowCount / n
    Rational upper;              // the family upper density it is checked against
};

// Finitary form of the interval-averaging remark: the best window of
// length n must reach the family upper density minus 1/n.
AveragingReport averagingCheck(const IntWindowSet& a, const FolnerFamily& f, std::int64_t n);

// Finite-depth diagonal approximation of the translation-invariant
// measure. Every requested tuple (g_1..g_r) denotes the intersection
// A ∩ g_1·A ∩ ... ∩ g_r·A. Stage 0 keeps the tail indices realizing the
// upper-density proxy of A; stage s pins requested set (s-1 mod count)
// to its maximal frequency over the surviving indices. All values are
// read at the last diagonal set, so additivity and monotonicity hold
// exactly there.
struct MeasureApprox {
    std::vector<std::vector<std::int64_t>> requests;
    std::vector<Rational> values;      // one per request
    Rational valueOfA;                 // equals the stage-0 proxy
    std::vector<int> diagIndices;      // diagonal family index per stage
    int finalIndex = 0;                // index whose set provides the readings
    std::int64_t finalSetSize = 0;     // |F'_last|
    int depth = 0;
};

MeasureApprox bergMeasureApprox(const IntWindowSet& a,
                                const std::vector<std::vector<std::int64_t>>& translateLists,
                                const FolnerFamily& f, int depth);
MeasureApprox bergMeasureApprox(const GroupSubset& a,
                                const std::vector<std::vector<std::int64_t>>& translateLists,
                                int depth);

} // namespace sumsetlab
