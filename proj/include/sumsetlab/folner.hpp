#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sumsetlab/int_window_set.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

// A parameterized family of finite sets F_0, ..., F_maxIndex used for all
// density computations. Integer kinds live in Z; WholeGroup is the constant
// family F_n = G over a finite group.
class FolnerFamily {
public:
    enum class Kind { Intervals, ShiftedIntervals, ExplicitSets, WholeGroup };

    static FolnerFamily intervals(int maxIndex);                       // F_n = [-n, n]
    static FolnerFamily shifted(std::vector<std::int64_t> shifts);     // F_n = [a_n, a_n + n]
    static FolnerFamily explicitSets(std::vector<std::vector<std::int64_t>> sets);
    static FolnerFamily wholeGroup(int maxIndex = 1);

    // Spec strings: intervals:<maxIndex>, shifted:<path>, explicit:<path>,
    // whole-group. Shifted files hold one a_n per line; explicit files hold
    // one space-separated set per line.
    static FolnerFamily parse(const std::string& spec);

    Kind kind() const { return kind_; }
    int maxIndex() const { return maxIndex_; }
    bool isInterval(int) const { return kind_ == Kind::Intervals || kind_ == Kind::ShiftedIntervals; }

    std::int64_t setSize(int n) const;
    std::pair<std::int64_t, std::int64_t> intervalBounds(int n) const; // interval kinds only
    const std::vector<std::int64_t>& explicitSet(int n) const;

    // 1 - |F_n ∩ (g + F_n)| / |F_n| for the integer kinds.
    Rational defect(std::int64_t g, int n) const;

    // Throws WindowTooSmall unless every F_n, n <= upTo, lies inside the window.
    void requireInsideWindow(const IntWindowSet& window, int upTo) const;

    // |A ∩ F_n|.
    std::int64_t countIn(const IntWindowSet& a, int n) const;

    void checkIndex(int n) const;

private:
    Kind kind_ = Kind::Intervals;
    int maxIndex_ = 0;
    std::vector<std::int64_t> shifts_;
    std::vector<std::vector<std::int64_t>> sets_;
};

} // namespace sumsetlab
