#include "sumsetlab/fp_words.hpp"

#include <cstdlib>
#include <string>

namespace sumsetlab {

std::uint64_t enumerationBudget() {
    if (const char* env = std::getenv("SUMSETLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw Error(ErrorCode::InvalidInput, "SUMSETLAB_BUDGET must be a positive integer");
    }
    return std::uint64_t(1) << 20;
}

std::uint64_t fpWordCount(int n, int maxLen, std::uint64_t cap) {
    // sum_{k=1..maxLen} C(n,k), saturating just past cap.
    std::uint64_t total = 0;
    std::uint64_t binom = 1;
    for (int k = 1; k <= maxLen && k <= n; ++k) {
        if (binom > cap) return cap + 1; // next multiply could overflow; already past cap
        binom = binom * static_cast<std::uint64_t>(n - k + 1) / static_cast<std::uint64_t>(k);
        total += binom;
        if (total > cap) return cap + 1;
    }
    return total;
}

} // namespace sumsetlab
