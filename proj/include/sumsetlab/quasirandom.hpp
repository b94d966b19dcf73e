#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumsetlab/group.hpp"
#include "sumsetlab/group_subset.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

// Irreducible character degrees. Abelian groups are answered directly
// (all degrees 1); everything else goes through the modular class-sum
// method: diagonalize a seeded random combination of the class-constant
// matrices over F_p with p = 1 (mod exponent) and p > 2*ceil(sqrt(|G|)),
// then read each degree from the normalized eigenvector.
struct CharacterDegrees {
    std::vector<int> degrees;  // ascending
    bool exactModular = false; // false: the verified-small (abelian) path
    std::int64_t prime = 0;    // 0 on the abelian path
    int classCount = 0;
};

CharacterDegrees characterDegrees(const GroupTable& g, std::uint64_t seed = 0);

// Smallest nontrivial irreducible dimension; 1 whenever G has a nontrivial
// abelianization.
int quasirandomDegree(const GroupTable& g, std::uint64_t seed = 0);

// One experiment trial outcome for a concrete set.
struct QuasiSetOutcome {
    std::vector<std::int64_t> setValues;
    bool baseFound = false;
    std::vector<std::int64_t> base;    // length n when found
    bool exhaustive = false;           // exhaustive search ran
    bool verifiedCounterexample = false;
};

struct QuasiExperimentReport {
    std::string groupName;
    Rational epsilon;
    int n = 0;
    int trials = 0;
    int successes = 0;
    int unverifiedFailures = 0;
    std::vector<QuasiSetOutcome> failures; // failing random trials only
    struct BatteryEntry {
        std::string label;
        bool skippedSmall = false; // below the epsilon*|G| size hypothesis
        QuasiSetOutcome outcome;
    };
    std::vector<BatteryEntry> battery;
};

// Seeded random subsets of size ceil(eps*|G|) plus a fixed adversarial
// battery; per trial, greedy extraction first, exhaustive fallback when
// |G| <= 60/eps. Failures without an exhaustive verification are counted
// as unverified (reported, not fatal).
QuasiExperimentReport quasiProductsExperiment(const GroupTable& g, const Rational& epsilon, int n,
                                              int trials, std::uint64_t seed, int jobs = 1);

// Exhaustive search for an ordered length-n base with its whole FP closure
// inside A; used by the experiment and by certificate verification.
bool exhaustiveFpBase(const GroupSubset& a, int n, std::vector<std::int64_t>* baseOut);

} // namespace sumsetlab
