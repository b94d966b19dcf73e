#include "sumsetlab/folner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sumsetlab {

FolnerFamily FolnerFamily::intervals(int maxIndex) {
    if (maxIndex < 0) throw Error(ErrorCode::InvalidInput, "intervals family needs maxIndex >= 0");
    FolnerFamily f;
    f.kind_ = Kind::Intervals;
    f.maxIndex_ = maxIndex;
    return f;
}

FolnerFamily FolnerFamily::shifted(std::vector<std::int64_t> shifts) {
    if (shifts.empty()) throw Error(ErrorCode::InvalidInput, "shifted family needs at least one shift");
    FolnerFamily f;
    f.kind_ = Kind::ShiftedIntervals;
    f.maxIndex_ = static_cast<int>(shifts.size()) - 1;
    f.shifts_ = std::move(shifts);
    return f;
}

FolnerFamily FolnerFamily::explicitSets(std::vector<std::vector<std::int64_t>> sets) {
    if (sets.empty()) throw Error(ErrorCode::InvalidInput, "explicit family needs at least one set");
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) throw Error(ErrorCode::InvalidInput, "explicit family set is empty");
    }
    for (std::size_t i = 1; i < sets.size(); ++i)
        if (sets[i].size() <= sets[i - 1].size())
            throw Error(ErrorCode::InvalidInput, "explicit family sizes must strictly increase");
    FolnerFamily f;
    f.kind_ = Kind::ExplicitSets;
    f.maxIndex_ = static_cast<int>(sets.size()) - 1;
    f.sets_ = std::move(sets);
    return f;
}

FolnerFamily FolnerFamily::wholeGroup(int maxIndex) {
    FolnerFamily f;
    f.kind_ = Kind::WholeGroup;
    f.maxIndex_ = maxIndex < 0 ? 0 : maxIndex;
    return f;
}

FolnerFamily FolnerFamily::parse(const std::string& spec) {
    if (spec == "whole-group") return wholeGroup();
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorCode::InvalidInput, "folner spec '" + spec + "'");
    std::string kind = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    if (kind == "intervals") {
        try {
            return intervals(std::stoi(arg));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, "folner spec '" + spec + "': bad maxIndex");
        }
    }
    if (kind == "shifted") {
        std::ifstream f(arg);
        if (!f) throw Error(ErrorCode::InvalidInput, "cannot open shifted-family file " + arg);
        std::vector<std::int64_t> shifts;
        std::int64_t v;
        while (f >> v) shifts.push_back(v);
        return shifted(std::move(shifts));
    }
    if (kind == "explicit") {
        std::ifstream f(arg);
        if (!f) throw Error(ErrorCode::InvalidInput, "cannot open explicit-family file " + arg);
        std::vector<std::vector<std::int64_t>> sets;
        std::string line;
        while (std::getline(f, line)) {
            std::istringstream ls(line);
            std::vector<std::int64_t> s;
            std::int64_t v;
            while (ls >> v) s.push_back(v);
            if (!s.empty()) sets.push_back(std::move(s));
        }
        return explicitSets(std::move(sets));
    }
    throw Error(ErrorCode::InvalidInput, "folner spec '" + spec + "'");
}

void FolnerFamily::checkIndex(int n) const {
    if (n < 0 || n > maxIndex_)
        throw Error(ErrorCode::IndexOutOfFamily, "family index " + std::to_string(n) + " outside [0," + std::to_string(maxIndex_) + "]");
}

std::int64_t FolnerFamily::setSize(int n) const {
    checkIndex(n);
    switch (kind_) {
    case Kind::Intervals: return 2 * static_cast<std::int64_t>(n) + 1;
    case Kind::ShiftedIntervals: return n + 1;
    case Kind::ExplicitSets: return static_cast<std::int64_t>(sets_[n].size());
    case Kind::WholeGroup: throw Error(ErrorCode::InvalidInput, "whole-group family has no integer sets");
    }
    return 0;
}

std::pair<std::int64_t, std::int64_t> FolnerFamily::intervalBounds(int n) const {
    checkIndex(n);
    if (kind_ == Kind::Intervals) return {-static_cast<std::int64_t>(n), n};
    if (kind_ == Kind::ShiftedIntervals) return {shifts_[n], shifts_[n] + n};
    throw Error(ErrorCode::InvalidInput, "family is not interval-shaped");
}

const std::vector<std::int64_t>& FolnerFamily::explicitSet(int n) const {
    checkIndex(n);
    if (kind_ != Kind::ExplicitSets) throw Error(ErrorCode::InvalidInput, "family is not explicit");
    return sets_[n];
}

Rational FolnerFamily::defect(std::int64_t g, int n) const {
    checkIndex(n);
    switch (kind_) {
    case Kind::Intervals:
    case Kind::ShiftedIntervals: {
        std::int64_t len = setSize(n);
        std::int64_t ag = g < 0 ? -g : g;
        std::int64_t overlap = ag >= len ? 0 : len - ag;
        return Rational(len - overlap, len);
    }
    case Kind::ExplicitSets: {
        const auto& s = sets_[n];
        std::int64_t overlap = 0;
        // |F ∩ (g + F)| by merging the sorted set with its shift.
        std::size_t i = 0, j = 0;
        while (i < s.size() && j < s.size()) {
            std::int64_t a = s[i], b = s[j] + g;
            if (a == b) { ++overlap; ++i; ++j; }
            else if (a < b) ++i;
            else ++j;
        }
        std::int64_t len = static_cast<std::int64_t>(s.size());
        return Rational(len - overlap, len);
    }
    case Kind::WholeGroup:
        return Rational(0, 1); // g*G = G
    }
    return Rational(0, 1);
}

void FolnerFamily::requireInsideWindow(const IntWindowSet& window, int upTo) const {
    checkIndex(upTo);
    if (kind_ == Kind::WholeGroup) return;
    for (int n = 0; n <= upTo; ++n) {
        if (kind_ == Kind::ExplicitSets) {
            const auto& s = sets_[n];
            if (s.front() < window.lo() || s.back() > window.hi())
                throw Error(ErrorCode::WindowTooSmall, "F_" + std::to_string(n) + " leaves the window");
        } else {
            auto [a, b] = intervalBounds(n);
            if (a < window.lo() || b > window.hi())
                throw Error(ErrorCode::WindowTooSmall, "F_" + std::to_string(n) + " = [" + std::to_string(a) + "," + std::to_string(b) + "] leaves the window");
        }
    }
}

std::int64_t FolnerFamily::countIn(const IntWindowSet& a, int n) const {
    checkIndex(n);
    if (kind_ == Kind::ExplicitSets) {
        std::int64_t c = 0;
        for (std::int64_t v : sets_[n])
            if (a.contains(v)) ++c;
        return c;
    }
    auto [x, y] = intervalBounds(n);
    return a.countInRange(x, y);
}

} // namespace sumsetlab
