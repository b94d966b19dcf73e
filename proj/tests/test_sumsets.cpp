#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sumsetlab/sumsets.hpp"

using namespace sumsetlab;

namespace {

IntWindowSet residueSet(std::int64_t lo, std::int64_t hi, std::initializer_list<std::int64_t> residues, std::int64_t m) {
    IntWindowSet s(lo, hi);
    for (std::int64_t v = lo; v <= hi; ++v)
        for (std::int64_t r : residues)
            if (((v % m) + m) % m == r) s.add(v);
    return s;
}

GroupSubset groupSet(const GroupTable& g, const std::vector<std::int64_t>& vals) {
    GroupSubset s(g);
    for (std::int64_t v : vals) s.add(v);
    return s;
}

} // namespace

TEST_CASE("ip extraction succeeds on a subsemigroup") {
    IntWindowSet mult5 = residueSet(0, 100000, {0}, 5);
    IpExtractResult r = ipExtract(mult5, 10, Rational(1, 100));
    REQUIRE(r.success);
    CHECK(r.base.size() == 10);
    CHECK(r.base[0] == 0);
    CHECK(r.base[1] == 5);
    CHECK(r.verifiedDepth == 10);
    // Certificate invariant: recomputing the nested chain reproduces the
    // recorded sizes exactly.
    IntWindowSet cur = mult5;
    std::vector<std::int64_t> sizes{cur.count()};
    for (std::int64_t a : r.base) {
        CHECK(cur.contains(a));
        cur.restrictLeftInverseTranslate(cur, a);
        sizes.push_back(cur.count());
    }
    CHECK(sizes == r.nestedSizes);
    // The whole chain stays near density 1/5 of the ambient window.
    for (std::int64_t s : r.nestedSizes)
        CHECK(Rational(s, mult5.universeSize()) >= Rational(19, 100));
}

TEST_CASE("ip extraction fails on odds with the parity witness") {
    IntWindowSet odds = residueSet(0, 1000, {1}, 2);
    IpExtractResult r = ipExtract(odds, 2, Rational(1, 100));
    REQUIRE(!r.success);
    CHECK(r.failedStage == 1);
    CHECK(r.bestIntersection == 0);
    CHECK(r.haveCandidate);
    CHECK(r.bestCandidate == 1); // canonical-least among the all-zero scores
    CHECK(r.nestedSizes == std::vector<std::int64_t>{500});
}

TEST_CASE("ip extraction depth limit on residues 1,2,3 mod 7") {
    IntWindowSet a = residueSet(0, 10000, {1, 2, 3}, 7);
    IpExtractResult r = ipExtract(a, 3, Rational(1, 10000 + 1));
    CHECK(!r.success);
    CHECK(r.failedStage == 3);
    // Exhaustive oracle on a small window: no base keeps three nested
    // stages alive, two is the maximum.
    IntWindowSet small = residueSet(0, 70, {1, 2, 3}, 7);
    CHECK(oracles::maxIpDepthExhaustive(small, 3) == 2);
    IpExtractResult r2 = ipExtract(a, 2, Rational(1, 10000 + 1));
    CHECK(r2.success);
}

TEST_CASE("ip induction property: ordered products land in the right stage") {
    IntWindowSet mult5 = residueSet(0, 100000, {0}, 5);
    IpExtractResult r = ipExtract(mult5, 6, Rational(1, 100));
    REQUIRE(r.success);
    std::vector<IntWindowSet> stages{mult5};
    for (std::int64_t a : r.base) {
        IntWindowSet next = stages.back();
        next.restrictLeftInverseTranslate(stages.back(), a);
        stages.push_back(next);
    }
    std::vector<std::vector<int>> subsets{{0, 2}, {1, 3, 5}, {2, 4}, {0, 1, 2, 3, 4, 5}, {5}};
    for (const auto& idxs : subsets) {
        std::int64_t prod = 0;
        bool first = true;
        for (int i : idxs) {
            prod = first ? r.base[i] : prod + r.base[i];
            first = false;
        }
        CHECK(stages[static_cast<std::size_t>(idxs.front())].contains(prod));
    }
}

TEST_CASE("ip extraction over a group ambient") {
    GroupTable g = buildGroup("zn:12");
    GroupSubset evens = groupSet(g, {0, 2, 4, 6, 8, 10});
    IpExtractResult r = ipExtract(evens, 3, Rational(1, 12));
    CHECK(r.success); // the subgroup is FP-closed

    GroupSubset odds = groupSet(g, {1, 3, 5, 7, 9, 11});
    IpExtractResult f = ipExtract(odds, 2, Rational(1, 12));
    CHECK(!f.success);
    CHECK(f.failedStage == 1);
}

TEST_CASE("nathanson on evens") {
    GroupTable g = buildGroup("zn:1000");
    GroupSubset evens(g);
    for (int v = 0; v < 1000; v += 2) evens.add(v);
    NathansonResult r = nathansonDecompose(evens, 1, 5, Rational(1, 100));
    REQUIRE(r.success);
    CHECK(r.parts.size() == 1);
    CHECK(r.parts[0] == std::vector<std::int64_t>{0, 2, 4, 6, 8});
    CHECK(r.bDensity == Rational(1, 2));
    CHECK(r.containmentVerified);

    // Integer-window variant: the window clips the top; the density
    // denominator is the sub-window where every translate is defined, so
    // the evens come out at exactly 1/2.
    IntWindowSet ze = residueSet(0, 999, {0}, 2);
    NathansonResult rz = nathansonDecompose(ze, 1, 5, Rational(1, 100));
    REQUIRE(rz.success);
    CHECK(rz.parts[0] == std::vector<std::int64_t>{0, 2, 4, 6, 8});
    CHECK(rz.bDensity == Rational(1, 2));
    CHECK(nathansonContainmentHolds(ze, rz.parts, rz.bValues));
}

TEST_CASE("nathanson union-bound floor on a seeded dense set") {
    GroupTable g = buildGroup("zn:1000");
    GroupSubset a = groupSet(g, oracles::randomSubset(1000, 900, 7));
    NathansonResult r = nathansonDecompose(a, 1, 4, Rational(3, 5));
    REQUIRE(r.success);
    CHECK(r.bDensity >= Rational(3, 5)); // 1 - 4*(1 - 9/10)
}

TEST_CASE("nathanson greedy floor property for dense sets") {
    // B is A intersected with m translates, so the union bound guarantees
    // density(B) >= 1 - (m+1)(1-delta) for any picks; the greedy must never
    // fall below that.
    GroupTable g = buildGroup("zn:1000");
    for (std::uint64_t seed = 20; seed < 25; ++seed) {
        GroupSubset a = groupSet(g, oracles::randomSubset(1000, 900, seed));
        for (int m : {2, 4}) {
            Rational floor = Rational(1) - Rational(m + 1, 10);
            NathansonResult r = nathansonDecompose(a, 1, m, floor);
            CHECK(r.success);
            CHECK(r.bDensity >= floor);
        }
    }
}

TEST_CASE("nathanson degenerate failure") {
    GroupTable g = buildGroup("zn:5");
    GroupSubset a = groupSet(g, {0});
    NathansonResult r = nathansonDecompose(a, 1, 2, Rational(1, 100));
    CHECK(!r.success);
    CHECK(r.failedRound == 1);
}

TEST_CASE("nathanson recursion for n = 2") {
    GroupTable g = buildGroup("zn:1000");
    GroupSubset evens(g);
    for (int v = 0; v < 1000; v += 2) evens.add(v);
    NathansonResult r = nathansonDecompose(evens, 2, 2, Rational(1, 10));
    REQUIRE(r.success);
    CHECK(r.parts.size() == 2);
    CHECK(r.containmentVerified);
    CHECK(nathansonContainmentHolds(evens, r.parts, r.bValues));
}

TEST_CASE("productset grid on a subgroup") {
    GroupTable g = buildGroup("zn:100");
    GroupSubset evens(g);
    for (int v = 0; v < 100; v += 2) evens.add(v);
    ProductsetResult r = productsetSearch(evens, 50, true);
    REQUIRE(r.success);
    CHECK(r.bSide.size() == 50);
    CHECK(r.cSide.size() == 50);
    for (const auto& w : r.bWitnesses) {
        CHECK(evens.contains(w[1]));
        CHECK(evens.contains(w[2]));
        CHECK(g.mul(static_cast<int>(w[1]), g.inv(static_cast<int>(w[2]))) == w[0]);
    }
}

TEST_CASE("productset on an interval in zn") {
    GroupTable g = buildGroup("zn:100");
    GroupSubset a(g);
    for (int v = 0; v <= 50; ++v) a.add(v);
    ProductsetResult r = productsetSearch(a, 25, false);
    REQUIRE(r.success);
    for (std::int64_t b : r.bSide)
        for (std::int64_t c : r.cSide)
            CHECK(a.contains(g.mul(static_cast<int>(b), static_cast<int>(c))));
}

TEST_CASE("productset never beats the exhaustive grid oracle") {
    for (std::uint64_t seed : {11u, 12u}) {
        IntWindowSet a = oracles::randomWindowSet(0, 150, 1, 10, seed);
        if (a.empty()) continue;
        std::vector<std::int64_t> pool;
        for (std::int64_t v = a.lo() - a.hi(); v <= a.hi() - a.lo(); ++v) pool.push_back(v);
        int oracleMax = oracles::maxBalancedGrid(a, pool, 4);
        int got = 0;
        for (int k = 4; k >= 1; --k) {
            ProductsetResult r = productsetSearch(a, k, false);
            if (r.success) { got = k; break; }
        }
        CHECK(got <= oracleMax);
    }
}

TEST_CASE("productset staircase cap raises the Ramsey budget error") {
    GroupTable g = buildGroup("zn:100");
    GroupSubset evens(g);
    for (int v = 0; v < 100; v += 2) evens.add(v);
    CHECK_THROWS_AS(productsetSearch(evens, 3, false, 2), Error);
    try {
        productsetSearch(evens, 3, false, 2);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RamseyBudgetExceeded);
    }
}

TEST_CASE("product-free verdicts") {
    GroupTable z5 = buildGroup("zn:5");
    ProductFreeVerdict v = productFreeCheck(groupSet(z5, {1, 2}));
    CHECK(!v.productFree);
    CHECK(v.b == 1);
    CHECK(v.c == 1);
    CHECK(v.product == 2);

    GroupTable z9 = buildGroup("zn:9");
    CHECK(productFreeCheck(groupSet(z9, {3, 4, 5})).productFree);

    GroupTable z12 = buildGroup("zn:12");
    GroupSubset sub = groupSet(z12, {0, 4, 8}); // a subgroup: e*e = e
    CHECK(!productFreeCheck(sub).productFree);
}

TEST_CASE("product-free cross-check against A ∩ A*A") {
    GroupTable g = buildGroup("dihedral:6");
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GroupSubset a = groupSet(g, oracles::randomSubset(g.order(), 4, seed));
        bool hit = false;
        a.forEach([&](std::int64_t x) {
            a.forEach([&](std::int64_t y) {
                if (a.contains(g.mul(static_cast<int>(x), static_cast<int>(y)))) hit = true;
            });
        });
        CHECK(productFreeCheck(a).productFree == !hit);
    }
}

TEST_CASE("max product-free exact sizes") {
    CHECK(maxProductFree(buildGroup("zn:2")).size == 1);
    CHECK(maxProductFree(buildGroup("zn:2")).witness == std::vector<std::int64_t>{1});

    GroupTable z10 = buildGroup("zn:10");
    MaxProductFreeResult r = maxProductFree(z10);
    CHECK(r.exact);
    CHECK(r.size == oracles::bruteMaxProductFree(z10));
    CHECK(productFreeCheck(groupSet(z10, r.witness)).productFree);

    GroupTable z12 = buildGroup("zn:12");
    CHECK(maxProductFree(z12).size == oracles::bruteMaxProductFree(z12));

    GroupTable s3 = buildGroup("sym:3");
    CHECK(maxProductFree(s3).size == oracles::bruteMaxProductFree(s3));
}

TEST_CASE("max product-free heuristic is flagged and verified") {
    GroupTable a5 = buildGroup("alt:5");
    MaxProductFreeResult r = maxProductFree(a5, 24, 0);
    CHECK(!r.exact);
    CHECK(r.size >= 1);
    CHECK(productFreeCheck(groupSet(a5, r.witness)).productFree);
}
