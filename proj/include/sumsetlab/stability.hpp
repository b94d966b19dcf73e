#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumsetlab/group_subset.hpp"

namespace sumsetlab {

// A binary relation between two finite index domains, materialized as a
// dense table.
class FiniteRelation {
public:
    FiniteRelation(int leftSize, int rightSize)
        : l_(leftSize), r_(rightSize), holds_(static_cast<std::size_t>(leftSize) * rightSize, 0) {
        if (leftSize < 1 || rightSize < 1)
            throw Error(ErrorCode::InvalidInput, "relation domains must be nonempty");
    }

    int leftSize() const { return l_; }
    int rightSize() const { return r_; }
    bool at(int a, int b) const { return holds_[static_cast<std::size_t>(a) * r_ + b]; }
    void set(int a, int b, bool v) { holds_[static_cast<std::size_t>(a) * r_ + b] = v ? 1 : 0; }

    FiniteRelation transposed() const;

    // R(x, y) <=> y·x in A, over G x G.
    static FiniteRelation fromGroupSet(const GroupSubset& a);

    // File format: "dims <l> <r>" then l rows of r entries, either
    // space-separated 0/1 tokens or one contiguous digit string per row.
    static FiniteRelation parse(std::istream& in, const std::string& sourceName);
    static FiniteRelation parseFile(const std::string& path);

private:
    int l_, r_;
    std::vector<char> holds_;
};

enum class PatternKind { Ladder, Equation };

struct IndexReport {
    PatternKind kind = PatternKind::Ladder;
    int value = 0;
    bool exact = true;            // false: greedy lower bound only
    std::vector<int> aSeq, bSeq;  // realizing sequences, re-verifiable
};

// Longest k admitting a_1..a_k, b_1..b_k with R(a_i, b_j) <=> i <= j.
// Exact backtracking when max(domain) <= exactBound, else greedy lower bound.
IndexReport ladderIndex(const FiniteRelation& r, int exactBound = 40);

// Longest k with R(a_i, b_j) for all i < j and not R(a_i, b_i).
IndexReport equationIndex(const FiniteRelation& r, int exactBound = 40);

// Ladder index of R(x, y) <=> y·x in A.
IndexReport setStabilityIndex(const GroupSubset& a, int exactBound = 40);

// Witness re-verification used by certificate checking and tests.
bool verifyPattern(const FiniteRelation& r, PatternKind kind,
                   const std::vector<int>& aSeq, const std::vector<int>& bSeq);

} // namespace sumsetlab
