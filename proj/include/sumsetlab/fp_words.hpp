#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

// One finite product x_{i_1}...x_{i_k} over a base sequence, indices
// strictly increasing, multiplied left to right. Indices are 0-based.
struct ProductWord {
    std::vector<int> indices;
    std::int64_t value = 0;
};

// Enumeration cap; SUMSETLAB_BUDGET overrides the default of 2^20 words.
std::uint64_t enumerationBudget();

// Number of nonempty increasing-index words of length <= maxLen over a
// base of size n, saturating at cap+1.
std::uint64_t fpWordCount(int n, int maxLen, std::uint64_t cap);

// All FP words of length <= maxLen in lexicographic index order.
// Throws CapExceeded when the enumeration would exceed the budget.
template <typename Mul>
std::vector<ProductWord> fpClosure(const std::vector<std::int64_t>& base, int maxLen, Mul&& mul,
                                   std::uint64_t budget = enumerationBudget()) {
    if (base.empty()) throw Error(ErrorCode::InvalidInput, "fpClosure: empty base");
    if (maxLen < 1) throw Error(ErrorCode::InvalidInput, "fpClosure: maxLen must be >= 1");
    const int n = static_cast<int>(base.size());
    std::uint64_t total = fpWordCount(n, maxLen, budget);
    if (total > budget)
        throw Error(ErrorCode::CapExceeded, "fpClosure would enumerate more than " + std::to_string(budget) + " words");
    std::vector<ProductWord> out;
    out.reserve(total);
    std::vector<int> idx;
    std::function<void(std::int64_t)> dfs = [&](std::int64_t prefixValue) {
        int from = idx.empty() ? 0 : idx.back() + 1;
        for (int i = from; i < n; ++i) {
            std::int64_t v = idx.empty() ? base[i] : mul(prefixValue, base[i]);
            idx.push_back(i);
            out.push_back(ProductWord{idx, v});
            if (static_cast<int>(idx.size()) < maxLen) dfs(v);
            idx.pop_back();
        }
    };
    dfs(0);
    return out;
}

struct FpVerdict {
    bool ok = true;
    ProductWord violator;          // lexicographically least, when !ok
    std::uint64_t wordsChecked = 0;
};

// Checks every FP word value of length <= maxLen for membership in A.
// Stops at the first (lexicographically least) violation.
template <typename Set>
FpVerdict verifyFP(const std::vector<std::int64_t>& base, const Set& a, int maxLen,
                   std::uint64_t budget = enumerationBudget()) {
    if (base.empty()) throw Error(ErrorCode::InvalidInput, "verifyFP: empty base");
    if (maxLen < 1) throw Error(ErrorCode::InvalidInput, "verifyFP: maxLen must be >= 1");
    const int n = static_cast<int>(base.size());
    std::uint64_t total = fpWordCount(n, maxLen, budget);
    if (total > budget)
        throw Error(ErrorCode::CapExceeded, "verifyFP would enumerate more than " + std::to_string(budget) + " words");
    FpVerdict verdict;
    std::vector<int> idx;
    std::function<bool(std::int64_t)> dfs = [&](std::int64_t prefixValue) {
        int from = idx.empty() ? 0 : idx.back() + 1;
        for (int i = from; i < n; ++i) {
            std::int64_t v = idx.empty() ? base[i] : a.mulElem(prefixValue, base[i]);
            idx.push_back(i);
            ++verdict.wordsChecked;
            if (!a.contains(v)) {
                verdict.ok = false;
                verdict.violator = ProductWord{idx, v};
                return false;
            }
            if (static_cast<int>(idx.size()) < maxLen && !dfs(v)) return false;
            idx.pop_back();
        }
        return true;
    };
    dfs(0);
    return verdict;
}

} // namespace sumsetlab
