// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. The CLI binary path arrives as argv[1] and is
// used for the determinism and verification criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sumsetlab/density.hpp"
#include "sumsetlab/quasirandom.hpp"
#include "sumsetlab/stability.hpp"
#include "sumsetlab/sumsets.hpp"

using namespace sumsetlab;

namespace {

struct Checker {
    int failed = 0;
    std::string firstFailure;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ++failed;
            if (firstFailure.empty()) firstFailure = what;
        }
    }
};

int criteriaFailed = 0;

void criterion(int num, const std::string& label, const std::function<void(Checker&)>& body) {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2fs", secs);
    if (c.failed == 0) {
        std::cout << "criterion " << num << ": PASS  (" << label << ") [" << buf << "]\n";
    } else {
        ++criteriaFailed;
        std::cout << "criterion " << num << ": FAIL  (" << label << ") [" << buf << "] -- " << c.failed
                  << " checks failed; first: " << c.firstFailure << "\n";
    }
}

IntWindowSet residueClass(std::int64_t lo, std::int64_t hi, std::int64_t r, std::int64_t m) {
    IntWindowSet s(lo, hi);
    for (std::int64_t v = lo; v <= hi; ++v)
        if (((v % m) + m) % m == r) s.add(v);
    return s;
}

FolnerFamily alignedBlocks(std::int64_t m, int count) {
    std::vector<std::vector<std::int64_t>> sets;
    for (int j = 1; j <= count; ++j) {
        std::vector<std::int64_t> s;
        for (std::int64_t v = 0; v < j * m; ++v) s.push_back(v);
        sets.push_back(std::move(s));
    }
    return FolnerFamily::explicitSets(std::move(sets));
}

// ---- binary helpers for the determinism criterion ---------------------------

std::string gBinary;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct BinRun {
    int code;
    std::string out;
};

BinRun runBinary(const std::string& args) {
    std::string outFile = "accept_out.tmp";
    std::string cmd = "\"" + gBinary + "\" " + args + " > " + outFile + " 2> accept_err.tmp";
    int status = std::system(cmd.c_str());
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, slurp(outFile)};
}

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) gBinary = argv[1];

    criterion(1, "windowed Banach density of residue classes is exactly 1/m", [](Checker& c) {
        for (std::int64_t m = 1; m <= 20; ++m) {
            std::int64_t n = 50 * m;
            for (std::int64_t r = 0; r < m; ++r) {
                IntWindowSet a = residueClass(0, 10000, r, m);
                DensityReport rep = banachDensityWindowed(a, n);
                c.require(rep.value == Rational(1, m),
                          "m=" + std::to_string(m) + " r=" + std::to_string(r) + " gave " + rep.value.str());
            }
        }
    });

    criterion(2, "averaging remark: best window reaches the upper density minus 1/n", [](Checker& c) {
        FolnerFamily f = FolnerFamily::shifted(std::vector<std::int64_t>(10001, 0)); // F_w = [0, w]
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            int num = static_cast<int>(seed % 9) + 1;
            IntWindowSet a = oracles::randomWindowSet(0, 10000, num, 10, seed);
            for (std::int64_t n : {10, 100, 1000}) {
                AveragingReport rep = averagingCheck(a, f, n);
                c.require(rep.windowDensity >= rep.upper - Rational(1, n),
                          "seed " + std::to_string(seed) + " n=" + std::to_string(n));
                c.require(rep.ok, "report flag, seed " + std::to_string(seed));
            }
        }
    });

    criterion(3, "diagonal measure: mu(A) = 1/m exactly, additivity and monotonicity", [](Checker& c) {
        for (std::int64_t m : {2, 4, 5, 10}) {
            IntWindowSet a = residueClass(0, 9999, 0, m);
            FolnerFamily f = alignedBlocks(100, 100); // blocks [0, 100j-1], aligned to every m | 100
            std::vector<std::vector<std::int64_t>> requests = {
                {0}, {1}, {m}, {2 * m}, {m, 2 * m}, {0, 1}, {3 * m}, {m, 2 * m, 3 * m}};
            MeasureApprox mu = bergMeasureApprox(a, requests, f, 10000);
            c.require(mu.valueOfA == Rational(1, m), "mu(A) for m=" + std::to_string(m) + " is " + mu.valueOfA.str());
            Rational slack(2, mu.finalSetSize);
            // Additivity on the requested triple: (0) = (0) ∪ (1), the two
            // parts disjoint since A ∩ (1+A) = ∅ for m >= 2.
            Rational gap = mu.values[0] - mu.values[0] - mu.values[1];
            c.require(gap <= slack && Rational(0) - gap <= slack, "additivity slack m=" + std::to_string(m));
            c.require(mu.values[1] == Rational(0), "A ∩ (1+A) should vanish");
            // Monotone chains, exact at the shared final set.
            c.require(mu.values[7] <= mu.values[4], "chain (m,2m,3m) ⊆ (m,2m)");
            c.require(mu.values[4] <= mu.values[2], "chain (m,2m) ⊆ (m)");
            c.require(mu.values[2] <= mu.values[0] + Rational(1, mu.finalSetSize), "chain (m) ⊆ (0)");
            for (std::size_t i = 0; i < requests.size(); ++i) {
                IntWindowSet s = a;
                for (std::int64_t g : requests[i]) s.intersectWith(a.translate(g).set);
                c.require(mu.values[i] <= upperDensity(s, f).value, "value exceeds the upper-density proxy");
            }
            c.require(mu.depth == 10000, "depth echo");
        }
    });

    criterion(4, "IP extraction: depth 12 with 4095 verified products; parity failure", [](Checker& c) {
        IntWindowSet mult5 = residueClass(0, 100000, 0, 5);
        IpExtractResult r = ipExtract(mult5, 12, Rational(1, 100));
        c.require(r.success, "multiples of 5 should reach depth 12");
        c.require(r.verifiedDepth == 12, "verified depth");
        c.require(r.wordsChecked == 4095, "words checked = 2^12 - 1");

        IntWindowSet odds = residueClass(0, 1000, 1, 2);
        IpExtractResult f = ipExtract(odds, 2, Rational(1, 100));
        c.require(!f.success && f.failedStage == 1, "odds must fail at stage 1");
        c.require(f.bestIntersection == 0 && f.haveCandidate && f.bestCandidate == 1,
                  "parity witness: every odd shift kills the intersection");
    });

    criterion(5, "Nathanson: 50 seeded density-0.9 sets, m=4; n=1 floor 3/5 and n=2 floor 1/5", [](Checker& c) {
        GroupTable g = buildGroup("zn:1000");
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            GroupSubset a(g);
            for (std::int64_t v : oracles::randomSubset(1000, 900, seed)) a.add(v);
            NathansonResult r1 = nathansonDecompose(a, 1, 4, Rational(3, 5));
            c.require(r1.success, "n=1 seed " + std::to_string(seed));
            c.require(r1.bDensity >= Rational(3, 5), "n=1 density, seed " + std::to_string(seed) + ": " + r1.bDensity.str());
            c.require(r1.containmentVerified, "n=1 containment, seed " + std::to_string(seed));
            c.require(nathansonContainmentHolds(a, r1.parts, r1.bValues), "n=1 recheck, seed " + std::to_string(seed));

            NathansonResult r2 = nathansonDecompose(a, 2, 4, Rational(1, 5));
            c.require(r2.success, "n=2 seed " + std::to_string(seed));
            c.require(r2.bDensity >= Rational(1, 5), "n=2 density, seed " + std::to_string(seed) + ": " + r2.bDensity.str());
            c.require(nathansonContainmentHolds(a, r2.parts, r2.bValues), "n=2 recheck, seed " + std::to_string(seed));
        }
    });

    criterion(6, "productset: 50x50 grid on the index-2 subgroup; search never beats the oracle", [](Checker& c) {
        GroupTable g = buildGroup("zn:100");
        GroupSubset evens(g);
        for (int v = 0; v < 100; v += 2) evens.add(v);
        ProductsetResult r = productsetSearch(evens, 50, true);
        c.require(r.success && r.bSide.size() == 50 && r.cSide.size() == 50, "50x50 grid");
        c.require(r.bWitnesses.size() == 50, "A*A^-1 witnesses present");
        for (const auto& w : r.bWitnesses)
            c.require(evens.contains(w[1]) && evens.contains(w[2]) &&
                          g.mul(static_cast<int>(w[1]), g.inv(static_cast<int>(w[2]))) == w[0],
                      "witness identity");
        // 50 is the true maximum: C must fit inside a single translate of A.
        c.require(r.achievedK == 50, "achieved k is |A|");

        // Exhaustive bi-clique oracle on ambients of size <= 200.
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            IntWindowSet a = oracles::randomWindowSet(0, 150, 1, 10, seed);
            std::vector<std::int64_t> pool;
            for (std::int64_t v = a.lo() - a.hi(); v <= a.hi() - a.lo(); ++v) pool.push_back(v);
            int oracleMax = oracles::maxBalancedGrid(a, pool, 4);
            int got = 0;
            for (int k = 4; k >= 1; --k) {
                ProductsetResult s = productsetSearch(a, k, false);
                if (s.success) { got = k; break; }
            }
            c.require(got <= oracleMax, "oracle bound on window seed " + std::to_string(seed));
        }
        {
            GroupTable z60 = buildGroup("zn:60");
            GroupSubset a(z60);
            for (std::int64_t v : oracles::randomSubset(60, 30, 5)) a.add(v);
            std::vector<std::int64_t> pool;
            for (std::int64_t v = 0; v < 60; ++v) pool.push_back(v);
            int oracleMax = oracles::maxBalancedGrid(a, pool, 4);
            int got = 0;
            for (int k = 4; k >= 1; --k) {
                ProductsetResult s = productsetSearch(a, k, false);
                if (s.success) { got = k; break; }
            }
            c.require(got <= oracleMax, "oracle bound on zn:60");
        }
    });

    criterion(7, "quasirandomness degrees with identity checks and seed independence", [](Checker& c) {
        for (int n = 1; n <= 30; ++n)
            c.require(quasirandomDegree(buildGroup("zn:" + std::to_string(n))) == 1, "zn:" + std::to_string(n));
        c.require(quasirandomDegree(buildGroup("sym:3")) == 1, "sym:3");
        c.require(quasirandomDegree(buildGroup("sym:4")) == 1, "sym:4");
        c.require(quasirandomDegree(buildGroup("alt:5")) == 3, "alt:5");
        c.require(quasirandomDegree(buildGroup("psl2:7")) == 3, "psl2:7");
        for (const char* spec : {"sym:3", "sym:4", "alt:5", "psl2:7"}) {
            GroupTable g = buildGroup(spec);
            CharacterDegrees first = characterDegrees(g, 0);
            std::int64_t sumSq = 0;
            for (int d : first.degrees) {
                sumSq += static_cast<std::int64_t>(d) * d;
                c.require(g.order() % d == 0, std::string(spec) + ": divisibility");
            }
            c.require(sumSq == g.order(), std::string(spec) + ": sum of squares");
            c.require(static_cast<int>(first.degrees.size()) == ConjugacyData(g).classCount(),
                      std::string(spec) + ": class count");
            for (std::uint64_t seed = 1; seed <= 2; ++seed)
                c.require(characterDegrees(g, seed).degrees == first.degrees,
                          std::string(spec) + ": seed independence");
        }
    });

    criterion(8, "finitary corollary experiment on alt:5 and the zn:12 battery", [](Checker& c) {
        QuasiExperimentReport a5 = quasiProductsExperiment(buildGroup("alt:5"), Rational(2, 5), 3, 1000, 42);
        c.require(a5.unverifiedFailures == 0, "alt:5 unverified failures");
        c.require(a5.successes == 1000, "alt:5 failures: " + std::to_string(1000 - a5.successes));
        for (const auto& f : a5.failures)
            c.require(f.verifiedCounterexample, "alt:5 failure without verification");

        QuasiExperimentReport z12 = quasiProductsExperiment(buildGroup("zn:12"), Rational(1, 4), 2, 100, 42);
        c.require(z12.unverifiedFailures == 0, "zn:12 unverified failures");
        int verified = 0;
        GroupTable g = buildGroup("zn:12");
        for (const auto& e : z12.battery)
            if (!e.skippedSmall && e.outcome.verifiedCounterexample) {
                ++verified;
                GroupSubset s(g);
                for (std::int64_t v : e.outcome.setValues) s.add(v);
                c.require(!exhaustiveFpBase(s, 2, nullptr), "battery counterexample must re-verify");
            }
        c.require(verified >= 1, "zn:12 battery must produce a verified counterexample");
    });

    criterion(9, "stability indices with re-verified witnesses", [](Checker& c) {
        for (int n = 1; n <= 8; ++n) {
            FiniteRelation r(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    r.set(a, b, a <= b);
            IndexReport rep = ladderIndex(r);
            c.require(rep.value == n && rep.exact, "ladder of <= on [1.." + std::to_string(n) + "]");
            c.require(verifyPattern(r, PatternKind::Ladder, rep.aSeq, rep.bSeq), "ladder witness n=" + std::to_string(n));
        }
        FiniteRelation eq(8, 8);
        for (int i = 0; i < 8; ++i) eq.set(i, i, true);
        IndexReport rep = equationIndex(eq);
        c.require(rep.value == 2 && rep.exact, "equation index of equality on 8 points");
        c.require(verifyPattern(eq, PatternKind::Equation, rep.aSeq, rep.bSeq), "equation witness");
    });

    criterion(10, "byte-identical certificates across reruns, jobs settings, and verify", [](Checker& c) {
        if (gBinary.empty()) {
            c.require(false, "no CLI binary path supplied");
            return;
        }
        writeFile("accept_evens.set", "window -1000 1000\nmod 0 2\n");
        writeFile("accept_m5.set", "window 0 5000\nmod 0 5\n");
        writeFile("accept_odds.set", "window 0 999\nmod 1 2\n");
        writeFile("accept_ez.set", "window 0 999\nmod 0 2\n");
        writeFile("accept_e100.set", "window 0 99\nmod 0 2\n");
        writeFile("accept_z9.set", "window 0 8\nint 3\nint 4\nint 5\n");
        writeFile("accept_rel.rel", "dims 8 8\n11111111\n01111111\n00111111\n00011111\n00001111\n00000111\n00000011\n00000001\n");
        {
            std::ostringstream half;
            half << "window 0 15\n";
            for (std::int64_t v : oracles::randomSubset(16, 8, 3)) half << "int " << v << "\n";
            writeFile("accept_half16.set", half.str());
            std::ostringstream dense;
            dense << "window 0 999\n";
            for (std::int64_t v : oracles::randomSubset(1000, 900, 7)) dense << "int " << v << "\n";
            writeFile("accept_dense.set", dense.str());
            std::ostringstream blocks;
            for (int j = 1; j <= 100; ++j) {
                for (int v = 0; v < 50 * j; ++v) blocks << (v ? " " : "") << v;
                blocks << "\n";
            }
            writeFile("accept_blocks.fam", blocks.str());
        }
        writeFile("accept_r5.set", "window 0 4999\nmod 0 5\n");

        std::vector<std::pair<std::string, int>> corpus = {
            {"density --set accept_evens.set --folner intervals:1000 --mode upper", 0},
            {"density --set accept_evens.set --mode banach --n 100", 0},
            {"density --set accept_evens.set --folner intervals:1000 --mode averaging --n 10", 0},
            {"berg-measure --set accept_r5.set --folner explicit:accept_blocks.fam --depth 100 --translates \"0;5;1\"", 0},
            {"ip-extract --set accept_m5.set --depth 8", 0},
            {"ip-extract --set accept_odds.set --depth 2", 1},
            {"nathanson --group zn:1000 --set accept_dense.set --n 1 --m 4 --width-floor 3/5", 0},
            {"productset --group zn:100 --set accept_e100.set --k 50 --constrain-b", 0},
            {"product-free --group zn:9 --set accept_z9.set", 0},
            {"max-product-free --group zn:10", 0},
            {"max-product-free --group alt:5 --seed 1", 0},
            {"qr-degree --group psl2:7", 0},
            {"ladder --relation accept_rel.rel", 0},
            {"equation --relation accept_rel.rel", 0},
            {"set-stability --group zn:16 --set accept_half16.set", 0},
        };
        int idx = 0;
        for (const auto& [args, expectCode] : corpus) {
            BinRun first = runBinary(args);
            BinRun second = runBinary(args);
            c.require(first.code == expectCode, "exit code of: " + args);
            c.require(first.out == second.out, "rerun bytes differ for: " + args);
            c.require(!first.out.empty(), "empty certificate for: " + args);
            std::string certPath = "accept_cert_" + std::to_string(idx++) + ".txt";
            writeFile(certPath, first.out);
            BinRun ver = runBinary("verify " + certPath);
            c.require(ver.code == 0, "verify failed for: " + args);
        }
        // Parallelism must not change a single byte.
        std::string exp = "qr-experiment --group zn:12 --epsilon 1/4 --n 2 --trials 60 --seed 42";
        BinRun j1 = runBinary(exp + " --jobs 1");
        BinRun j8 = runBinary(exp + " --jobs 8");
        c.require(j1.code == 0 && j1.out == j8.out, "qr-experiment bytes differ across --jobs");
        writeFile("accept_cert_exp.txt", j1.out);
        c.require(runBinary("verify accept_cert_exp.txt").code == 0, "verify qr-experiment certificate");

        std::string exp5 = "qr-experiment --group alt:5 --epsilon 2/5 --n 3 --trials 40 --seed 42";
        BinRun e1 = runBinary(exp5 + " --jobs 1");
        BinRun e8 = runBinary(exp5 + " --jobs 8");
        c.require(e1.code == 0 && e1.out == e8.out, "alt:5 experiment bytes differ across --jobs");

        // --jobs must be invisible in every certificate, parallel or not.
        BinRun p1 = runBinary("productset --group zn:100 --set accept_e100.set --k 50 --constrain-b --jobs 8");
        BinRun p2 = runBinary("productset --group zn:100 --set accept_e100.set --k 50 --constrain-b");
        c.require(p1.out == p2.out, "--jobs leaked into a certificate");
    });

    std::cout << (criteriaFailed == 0 ? "acceptance: all criteria passed\n"
                                      : "acceptance: " + std::to_string(criteriaFailed) + " criteria FAILED\n");
    return criteriaFailed == 0 ? 0 : 1;
}
