#include "sumsetlab/stability.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace sumsetlab {

FiniteRelation FiniteRelation::transposed() const {
    FiniteRelation t(r_, l_);
    for (int a = 0; a < l_; ++a)
        for (int b = 0; b < r_; ++b)
            t.set(b, a, at(a, b));
    return t;
}

FiniteRelation FiniteRelation::fromGroupSet(const GroupSubset& a) {
    const int n = static_cast<int>(a.universeSize());
    FiniteRelation r(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            r.set(x, y, a.contains(a.mulElem(y, x)));
    return r;
}

FiniteRelation FiniteRelation::parse(std::istream& in, const std::string& src) {
    std::string word;
    int l = 0, r = 0;
    if (!(in >> word) || word != "dims" || !(in >> l >> r) || l < 1 || r < 1)
        throw Error(ErrorCode::InvalidInput, src + ": expected 'dims <l> <r>' header");
    FiniteRelation rel(l, r);
    int a = 0, b = 0;
    while (a < l && in >> word) {
        for (char ch : word) {
            if (ch != '0' && ch != '1')
                throw Error(ErrorCode::InvalidInput, src + ": relation entries must be 0 or 1");
            if (a >= l) throw Error(ErrorCode::InvalidInput, src + ": too many entries");
            rel.set(a, b, ch == '1');
            if (++b == r) { b = 0; ++a; }
        }
    }
    if (a != l || b != 0)
        throw Error(ErrorCode::InvalidInput, src + ": expected " + std::to_string(static_cast<long long>(l) * r) + " entries");
    return rel;
}

FiniteRelation FiniteRelation::parseFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot open relation file " + path);
    return parse(f, path);
}

bool verifyPattern(const FiniteRelation& r, PatternKind kind,
                   const std::vector<int>& aSeq, const std::vector<int>& bSeq) {
    if (aSeq.size() != bSeq.size()) return false;
    const int k = static_cast<int>(aSeq.size());
    for (int i = 0; i < k; ++i) {
        if (aSeq[i] < 0 || aSeq[i] >= r.leftSize()) return false;
        if (bSeq[i] < 0 || bSeq[i] >= r.rightSize()) return false;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            bool v = r.at(aSeq[i], bSeq[j]);
            if (kind == PatternKind::Ladder) {
                if (v != (i <= j)) return false;
            } else {
                if (i < j && !v) return false;
                if (i == j && v) return false;
            }
        }
    return true;
}

namespace {

struct PatternSearch {
    const FiniteRelation& r;
    PatternKind kind;
    std::vector<int> bestA, bestB;
    std::vector<int> curA, curB;

    explicit PatternSearch(const FiniteRelation& rel, PatternKind k) : r(rel), kind(k) {}

    // candA: still usable as a future a (ladder only: must be R-negative
    // against every chosen b). candB: usable as a future b (must be
    // R-positive against every chosen a).
    void expand(std::vector<int>& candA, std::vector<int>& candB) {
        int bound = static_cast<int>(curA.size()) +
                    std::min(static_cast<int>(candA.size()), static_cast<int>(candB.size()));
        if (bound <= static_cast<int>(bestA.size())) return;
        for (int a : candA) {
            for (int b : candB) {
                bool diag = r.at(a, b);
                if (kind == PatternKind::Ladder ? !diag : diag) continue;
                curA.push_back(a);
                curB.push_back(b);
                if (curA.size() > bestA.size()) { bestA = curA; bestB = curB; }
                std::vector<int> nextA, nextB;
                for (int x : candA)
                    if (kind != PatternKind::Ladder || !r.at(x, b)) nextA.push_back(x);
                for (int y : candB)
                    if (r.at(a, y)) nextB.push_back(y);
                expand(nextA, nextB);
                curA.pop_back();
                curB.pop_back();
            }
        }
    }
};

} // namespace

namespace {

IndexReport patternIndex(const FiniteRelation& r, PatternKind kind, int exactBound) {
    IndexReport rep;
    rep.kind = kind;
    std::vector<int> candA(r.leftSize()), candB(r.rightSize());
    for (int i = 0; i < r.leftSize(); ++i) candA[i] = i;
    for (int j = 0; j < r.rightSize(); ++j) candB[j] = j;

    if (std::max(r.leftSize(), r.rightSize()) <= exactBound) {
        PatternSearch s(r, kind);
        s.expand(candA, candB);
        rep.value = static_cast<int>(s.bestA.size());
        rep.aSeq = s.bestA;
        rep.bSeq = s.bestB;
        rep.exact = true;
        return rep;
    }

    // Greedy lower bound: take the first extendable pair in canonical
    // order at every step.
    std::vector<int> aSeq, bSeq;
    while (true) {
        bool extended = false;
        for (std::size_t ai = 0; ai < candA.size() && !extended; ++ai) {
            int a = candA[ai];
            for (std::size_t bi = 0; bi < candB.size() && !extended; ++bi) {
                int b = candB[bi];
                bool diag = r.at(a, b);
                if (kind == PatternKind::Ladder ? !diag : diag) continue;
                aSeq.push_back(a);
                bSeq.push_back(b);
                std::vector<int> nextA, nextB;
                for (int x : candA)
                    if (kind != PatternKind::Ladder || !r.at(x, b)) nextA.push_back(x);
                for (int y : candB)
                    if (r.at(a, y)) nextB.push_back(y);
                candA = std::move(nextA);
                candB = std::move(nextB);
                extended = true;
            }
        }
        if (!extended) break;
    }
    rep.value = static_cast<int>(aSeq.size());
    rep.aSeq = std::move(aSeq);
    rep.bSeq = std::move(bSeq);
    rep.exact = false;
    return rep;
}

} // namespace

IndexReport ladderIndex(const FiniteRelation& r, int exactBound) {
    return patternIndex(r, PatternKind::Ladder, exactBound);
}

IndexReport equationIndex(const FiniteRelation& r, int exactBound) {
    return patternIndex(r, PatternKind::Equation, exactBound);
}

IndexReport setStabilityIndex(const GroupSubset& a, int exactBound) {
    return ladderIndex(FiniteRelation::fromGroupSet(a), exactBound);
}

} // namespace sumsetlab
