#include "sumsetlab/sumsets.hpp"

#include <algorithm>
#include <numeric>

#include "sumsetlab/rng.hpp"

namespace sumsetlab {

namespace detail {

std::vector<int> maxCliqueVertices(const std::vector<std::vector<char>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> best, cur;
    std::function<void(const std::vector<int>&)> expand = [&](const std::vector<int>& cand) {
        for (std::size_t idx = 0; idx < cand.size(); ++idx) {
            if (cur.size() + (cand.size() - idx) <= best.size()) return;
            int v = cand[idx];
            cur.push_back(v);
            if (cur.size() > best.size()) best = cur;
            std::vector<int> next;
            for (std::size_t j = idx + 1; j < cand.size(); ++j)
                if (adj[v][cand[j]]) next.push_back(cand[j]);
            if (!next.empty()) expand(next);
            cur.pop_back();
        }
    };
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    expand(all);
    std::sort(best.begin(), best.end());
    return best;
}

} // namespace detail

ProductFreeVerdict productFreeCheck(const GroupSubset& a) {
    ProductFreeVerdict v;
    auto vals = a.values();
    for (std::int64_t b : vals) {
        for (std::int64_t c : vals) {
            std::int64_t p = a.mulElem(b, c);
            if (a.contains(p)) {
                v.productFree = false;
                v.b = b;
                v.c = c;
                v.product = p;
                return v;
            }
        }
    }
    return v;
}

namespace {

// Incremental product-free state over a group: S plus the set of all
// products b·c with b,c in S.
struct PfState {
    const GroupTable* g;
    std::vector<char> inS;
    std::vector<int> prodCount; // how many (b,c) pairs hit this product
    std::vector<int> members;

    explicit PfState(const GroupTable& gr)
        : g(&gr), inS(gr.order(), 0), prodCount(gr.order(), 0) {}

    bool canAdd(int x) const {
        if (x == g->identity()) return false;
        if (prodCount[x] > 0) return false; // x = b·c for b,c already in S
        int xx = g->mul(x, x);
        if (xx == x || inS[xx]) return false;
        for (int s : members) {
            int t = g->mul(x, s);
            if (t == x || inS[t]) return false;
            t = g->mul(s, x);
            if (t == x || inS[t]) return false;
        }
        return true;
    }

    void add(int x) {
        prodCount[g->mul(x, x)] += 1;
        for (int s : members) {
            prodCount[g->mul(x, s)] += 1;
            prodCount[g->mul(s, x)] += 1;
        }
        inS[x] = 1;
        members.push_back(x);
    }

    void removeLast() {
        int x = members.back();
        members.pop_back();
        inS[x] = 0;
        prodCount[g->mul(x, x)] -= 1;
        for (int s : members) {
            prodCount[g->mul(x, s)] -= 1;
            prodCount[g->mul(s, x)] -= 1;
        }
    }
};

void exactSearch(PfState& st, const std::vector<int>& order, std::size_t idx, std::vector<int>& best) {
    if (st.members.size() + (order.size() - idx) <= best.size()) return;
    if (idx == order.size()) {
        if (st.members.size() > best.size()) best = st.members;
        return;
    }
    int x = order[idx];
    if (st.canAdd(x)) {
        st.add(x);
        if (st.members.size() > best.size()) best = st.members;
        exactSearch(st, order, idx + 1, best);
        st.removeLast();
    }
    exactSearch(st, order, idx + 1, best);
}

std::vector<int> greedyFill(PfState& st, const std::vector<int>& order) {
    for (int x : order)
        if (!st.inS[x] && st.canAdd(x)) st.add(x);
    return st.members;
}

} // namespace

MaxProductFreeResult maxProductFree(const GroupTable& g, int exactBound, std::uint64_t seed) {
    MaxProductFreeResult res;
    std::vector<int> candidates;
    for (int x = 0; x < g.order(); ++x)
        if (x != g.identity()) candidates.push_back(x);

    if (g.order() <= exactBound) {
        PfState st(g);
        std::vector<int> best;
        exactSearch(st, candidates, 0, best);
        std::sort(best.begin(), best.end());
        res.size = static_cast<std::int64_t>(best.size());
        res.witness.assign(best.begin(), best.end());
        res.exact = true;
        return res;
    }

    // Heuristic: seeded greedy restarts plus a drop-one-refill pass.
    SplitMix64 rng(seed);
    std::vector<int> best;
    for (int restart = 0; restart < 200; ++restart) {
        std::vector<int> order = candidates;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);
        PfState st(g);
        std::vector<int> cur = greedyFill(st, order);
        // Local improvement: drop each member once and refill canonically.
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t d = 0; d < st.members.size(); ++d) {
                PfState trial(g);
                for (std::size_t i = 0; i < st.members.size(); ++i)
                    if (i != d) trial.add(st.members[i]);
                greedyFill(trial, candidates);
                if (trial.members.size() > st.members.size()) {
                    st = trial;
                    improved = true;
                    break;
                }
            }
        }
        cur = st.members;
        if (cur.size() > best.size()) best = cur;
    }
    std::sort(best.begin(), best.end());
    res.size = static_cast<std::int64_t>(best.size());
    res.witness.assign(best.begin(), best.end());
    res.exact = false;
    return res;
}

} // namespace sumsetlab
