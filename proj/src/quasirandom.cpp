#include "sumsetlab/quasirandom.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sumsetlab/rng.hpp"
#include "sumsetlab/sumsets.hpp"

namespace sumsetlab {

namespace {

// ---- F_p helpers -----------------------------------------------------------

std::int64_t mulMod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

std::int64_t powMod(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulMod(r, a, p);
        a = mulMod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::int64_t invMod(std::int64_t a, std::int64_t p) { return powMod(((a % p) + p) % p, p - 2, p); }

bool isPrime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest prime p = 1 (mod e) with p > bound.
std::int64_t dixonPrime(std::int64_t e, std::int64_t bound) {
    std::int64_t p = ((bound / e) + 1) * e + 1;
    while (!isPrime(p)) p += e;
    return p;
}

// det(M - x I) over F_p via the (r+1)-point Lagrange interpolation of
// Gaussian-elimination determinants.
struct ModMatrix {
    int r;
    std::int64_t p;
    std::vector<std::int64_t> a; // row-major

    std::int64_t det(std::int64_t shift) const {
        std::vector<std::int64_t> m = a;
        for (int i = 0; i < r; ++i)
            m[static_cast<std::size_t>(i) * r + i] = ((m[static_cast<std::size_t>(i) * r + i] - shift) % p + p) % p;
        std::int64_t d = 1;
        for (int col = 0; col < r; ++col) {
            int pivot = -1;
            for (int row = col; row < r; ++row)
                if (m[static_cast<std::size_t>(row) * r + col]) { pivot = row; break; }
            if (pivot < 0) return 0;
            if (pivot != col) {
                for (int j = col; j < r; ++j)
                    std::swap(m[static_cast<std::size_t>(pivot) * r + j], m[static_cast<std::size_t>(col) * r + j]);
                d = p - d;
            }
            std::int64_t pv = m[static_cast<std::size_t>(col) * r + col];
            d = mulMod(d, pv, p);
            std::int64_t pinv = invMod(pv, p);
            for (int row = col + 1; row < r; ++row) {
                std::int64_t f = mulMod(m[static_cast<std::size_t>(row) * r + col], pinv, p);
                if (!f) continue;
                for (int j = col; j < r; ++j) {
                    auto& x = m[static_cast<std::size_t>(row) * r + j];
                    x = ((x - mulMod(f, m[static_cast<std::size_t>(col) * r + j], p)) % p + p) % p;
                }
            }
        }
        return d;
    }

    // One kernel vector of (M - lambda I); empty when the nullity is not 1.
    std::vector<std::int64_t> kernelIfOneDimensional(std::int64_t lambda) const {
        std::vector<std::int64_t> m = a;
        for (int i = 0; i < r; ++i)
            m[static_cast<std::size_t>(i) * r + i] = ((m[static_cast<std::size_t>(i) * r + i] - lambda) % p + p) % p;
        std::vector<int> pivotCol(r, -1);
        int rank = 0;
        for (int col = 0; col < r && rank < r; ++col) {
            int pivot = -1;
            for (int row = rank; row < r; ++row)
                if (m[static_cast<std::size_t>(row) * r + col]) { pivot = row; break; }
            if (pivot < 0) continue;
            for (int j = 0; j < r; ++j)
                std::swap(m[static_cast<std::size_t>(pivot) * r + j], m[static_cast<std::size_t>(rank) * r + j]);
            std::int64_t pinv = invMod(m[static_cast<std::size_t>(rank) * r + col], p);
            for (int j = 0; j < r; ++j)
                m[static_cast<std::size_t>(rank) * r + j] = mulMod(m[static_cast<std::size_t>(rank) * r + j], pinv, p);
            for (int row = 0; row < r; ++row) {
                if (row == rank) continue;
                std::int64_t f = m[static_cast<std::size_t>(row) * r + col];
                if (!f) continue;
                for (int j = 0; j < r; ++j) {
                    auto& x = m[static_cast<std::size_t>(row) * r + j];
                    x = ((x - mulMod(f, m[static_cast<std::size_t>(rank) * r + j], p)) % p + p) % p;
                }
            }
            pivotCol[rank] = col;
            ++rank;
        }
        if (rank != r - 1) return {};
        std::vector<char> isPivot(r, 0);
        for (int i = 0; i < rank; ++i) isPivot[pivotCol[i]] = 1;
        int freeCol = -1;
        for (int c = 0; c < r; ++c)
            if (!isPivot[c]) { freeCol = c; break; }
        std::vector<std::int64_t> v(r, 0);
        v[freeCol] = 1;
        for (int i = 0; i < rank; ++i) {
            std::int64_t x = m[static_cast<std::size_t>(i) * r + freeCol];
            v[pivotCol[i]] = x ? p - x : 0;
        }
        return v;
    }
};

// Coefficients of det(M - x I) from values at x = 0..r (Lagrange).
std::vector<std::int64_t> charPoly(const ModMatrix& m) {
    const int r = m.r;
    const std::int64_t p = m.p;
    if (p <= r + 1)
        throw Error(ErrorCode::DegreeRecoveryFailed,
                    "modular prime " + std::to_string(p) + " is too small for " + std::to_string(r) + " classes");
    std::vector<std::int64_t> xs(r + 1), ys(r + 1);
    for (int i = 0; i <= r; ++i) {
        xs[i] = i;
        ys[i] = m.det(i);
    }
    // Newton's divided differences, then expansion to monomial form.
    std::vector<std::int64_t> dd = ys;
    for (int level = 1; level <= r; ++level)
        for (int i = r; i >= level; --i) {
            std::int64_t num = ((dd[i] - dd[i - 1]) % p + p) % p;
            dd[i] = mulMod(num, invMod(((xs[i] - xs[i - level]) % p + p) % p, p), p);
        }
    std::vector<std::int64_t> coef(r + 1, 0);
    std::vector<std::int64_t> basis(r + 1, 0); // product (x - x_0)...(x - x_{level-1})
    basis[0] = 1;
    int basisDeg = 0;
    for (int level = 0; level <= r; ++level) {
        for (int d = 0; d <= basisDeg; ++d)
            coef[d] = (coef[d] + mulMod(dd[level], basis[d], p)) % p;
        if (level < r) {
            // basis *= (x - x_level)
            std::int64_t c = (p - xs[level] % p) % p;
            for (int d = basisDeg + 1; d >= 1; --d)
                basis[d] = (basis[d - 1] + mulMod(basis[d], c, p)) % p;
            basis[0] = mulMod(basis[0], c, p);
            ++basisDeg;
        }
    }
    return coef;
}

std::int64_t evalPoly(const std::vector<std::int64_t>& coef, std::int64_t x, std::int64_t p) {
    std::int64_t v = 0;
    for (std::size_t i = coef.size(); i-- > 0;)
        v = (mulMod(v, x, p) + coef[i]) % p;
    return v;
}

} // namespace

CharacterDegrees characterDegrees(const GroupTable& g, std::uint64_t seed) {
    if (g.order() > 2000)
        throw Error(ErrorCode::OrderTooLarge, "characterDegrees handles |G| <= 2000");

    CharacterDegrees out;
    if (g.isAbelian()) {
        out.degrees.assign(static_cast<std::size_t>(g.order()), 1);
        out.exactModular = false;
        out.classCount = g.order();
        return out;
    }

    ConjugacyData conj(g);
    const int r = conj.classCount();
    out.classCount = r;
    const std::int64_t n = g.order();
    std::int64_t sq = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (sq * sq < n) ++sq;
    const std::int64_t p = dixonPrime(g.exponent(), 2 * sq);
    out.prime = p;

    // Class-constant matrices once; the retry loop only redraws the mix.
    std::vector<std::vector<std::int64_t>> mats(r);
    for (int i = 0; i < r; ++i) mats[i] = conj.classConstantMatrix(i);

    int identityClass = conj.classOf(g.identity());

    for (int attempt = 0; attempt < 32; ++attempt) {
        SplitMix64 rng(seed + 0x9e37u * static_cast<std::uint64_t>(attempt));
        ModMatrix mix{r, p, std::vector<std::int64_t>(static_cast<std::size_t>(r) * r, 0)};
        for (int i = 0; i < r; ++i) {
            std::int64_t t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p)));
            for (std::size_t e = 0; e < mix.a.size(); ++e)
                mix.a[e] = (mix.a[e] + mulMod(t, mats[i][e] % p, p)) % p;
        }

        auto coef = charPoly(mix);
        std::vector<std::int64_t> roots;
        for (std::int64_t x = 0; x < p; ++x)
            if (evalPoly(coef, x, p) == 0) roots.push_back(x);
        if (static_cast<int>(roots.size()) != r) continue; // eigenvalue collision; redraw

        std::vector<int> degrees;
        bool ok = true;
        for (std::int64_t lambda : roots) {
            auto v = mix.kernelIfOneDimensional(lambda);
            if (v.empty() || v[identityClass] == 0) { ok = false; break; }
            std::int64_t norm = invMod(v[identityClass], p);
            // y_j = chi(g_j^-1)/d; the class-sum eigenvalue of K_i is
            // |C_i| * y_{i'}, i' the inverse class.
            std::vector<std::int64_t> lam(r);
            for (int i = 0; i < r; ++i)
                lam[i] = mulMod(conj.classSize(i) % p, mulMod(v[conj.inverseClass(i)], norm, p), p);
            std::int64_t s = 0;
            for (int i = 0; i < r; ++i)
                s = (s + mulMod(mulMod(lam[i], lam[conj.inverseClass(i)], p), invMod(conj.classSize(i) % p, p), p)) % p;
            if (s == 0) { ok = false; break; }
            std::int64_t dSquared = mulMod(n % p, invMod(s, p), p);
            int d = 0;
            for (std::int64_t t = 1; t * t <= n; ++t)
                if (mulMod(t % p, t % p, p) == dSquared) { d = static_cast<int>(t); break; }
            if (d == 0) { ok = false; break; }
            degrees.push_back(d);
        }
        if (!ok) continue;

        std::sort(degrees.begin(), degrees.end());
        std::int64_t sumSq = 0;
        for (int d : degrees) sumSq += static_cast<std::int64_t>(d) * d;
        bool divides = std::all_of(degrees.begin(), degrees.end(), [&](int d) { return n % d == 0; });
        if (sumSq != n || static_cast<int>(degrees.size()) != r || degrees.front() != 1 || !divides) continue;

        out.degrees = std::move(degrees);
        out.exactModular = true;
        return out;
    }
    throw Error(ErrorCode::DegreeRecoveryFailed,
                "no separating class-sum combination after 32 attempts (prime " + std::to_string(p) +
                    ", seed " + std::to_string(seed) + ")");
}

int quasirandomDegree(const GroupTable& g, std::uint64_t seed) {
    CharacterDegrees cd = characterDegrees(g, seed);
    // Drop one copy of the trivial degree.
    if (cd.degrees.size() <= 1) return 1; // trivial group
    return cd.degrees[1];
}

namespace {

bool exhaustiveAllowed(std::int64_t order, const Rational& eps) {
    // |G| <= 60 / eps
    return static_cast<__int128>(order) * eps.num <= static_cast<__int128>(60) * eps.den;
}

bool fpBaseDfs(const GroupSubset& a, int n, std::vector<std::int64_t>& base,
               std::vector<std::int64_t>& products) {
    if (static_cast<int>(base.size()) == n) return true;
    bool ok = false;
    a.forEach([&](std::int64_t x) {
        if (ok) return;
        for (std::int64_t u : base)
            if (u == x) return;
        std::size_t oldSize = products.size();
        // New FP values: x itself and p*x for every existing product.
        std::vector<std::int64_t> added;
        added.push_back(x);
        for (std::size_t i = 0; i < oldSize; ++i)
            added.push_back(a.mulElem(products[i], x));
        for (std::int64_t v : added)
            if (!a.contains(v)) return;
        base.push_back(x);
        for (std::int64_t v : added) products.push_back(v);
        if (fpBaseDfs(a, n, base, products)) { ok = true; return; }
        base.pop_back();
        products.resize(oldSize);
    });
    return ok;
}

} // namespace

bool exhaustiveFpBase(const GroupSubset& a, int n, std::vector<std::int64_t>* baseOut) {
    std::vector<std::int64_t> base, products;
    if (fpBaseDfs(a, n, base, products)) {
        if (baseOut) *baseOut = base;
        return true;
    }
    return false;
}

namespace {

QuasiSetOutcome searchSet(const GroupTable& g, const GroupSubset& a, int n, bool allowExhaustive) {
    QuasiSetOutcome out;
    out.setValues = a.values();
    IpExtractResult greedy = ipExtract(a, n, Rational(1, g.order()));
    if (greedy.success) {
        out.baseFound = true;
        out.base = greedy.base;
        return out;
    }
    if (allowExhaustive) {
        out.exhaustive = true;
        std::vector<std::int64_t> base;
        if (exhaustiveFpBase(a, n, &base)) {
            out.baseFound = true;
            out.base = base;
        } else {
            out.verifiedCounterexample = true;
        }
    }
    return out;
}

} // namespace

QuasiExperimentReport quasiProductsExperiment(const GroupTable& g, const Rational& epsilon, int n,
                                              int trials, std::uint64_t seed, int jobs) {
    if (n < 1 || n > 6) throw Error(ErrorCode::InvalidInput, "experiment: n must be in [1,6]");
    if (trials < 0) throw Error(ErrorCode::InvalidInput, "experiment: trials must be >= 0");
    const std::int64_t order = g.order();
    // ceil(eps * |G|)
    std::int64_t setSize = (epsilon.num * order + epsilon.den - 1) / epsilon.den;
    if (setSize < n)
        throw Error(ErrorCode::InvalidInput, "experiment: ceil(eps*|G|) must be >= n");
    if (setSize > order)
        throw Error(ErrorCode::InvalidInput, "experiment: epsilon > 1");

    QuasiExperimentReport rep;
    rep.groupName = g.name();
    rep.epsilon = epsilon;
    rep.n = n;
    rep.trials = trials;
    const bool allowExhaustive = exhaustiveAllowed(order, epsilon);

    // Random trials, seeded per index so parallel chunks reproduce the
    // sequential order exactly.
    std::vector<QuasiSetOutcome> outcomes(static_cast<std::size_t>(trials));
    auto runTrial = [&](int t) {
        SplitMix64 rng(seed + static_cast<std::uint64_t>(t));
        std::vector<std::int64_t> all(static_cast<std::size_t>(order));
        for (std::int64_t i = 0; i < order; ++i) all[static_cast<std::size_t>(i)] = i;
        GroupSubset a(g);
        for (std::int64_t i = 0; i < setSize; ++i) {
            std::uint64_t j = i + rng.below(static_cast<std::uint64_t>(order - i));
            std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
            a.add(all[static_cast<std::size_t>(i)]);
        }
        outcomes[static_cast<std::size_t>(t)] = searchSet(g, a, n, allowExhaustive);
    };
    if (jobs <= 1 || trials < 2) {
        for (int t = 0; t < trials; ++t) runTrial(t);
    } else {
        int nThreads = std::min(jobs, trials);
        std::vector<std::thread> pool;
        for (int w = 0; w < nThreads; ++w)
            pool.emplace_back([&, w] {
                for (int t = w; t < trials; t += nThreads) runTrial(t);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& o : outcomes) {
        if (o.baseFound) {
            ++rep.successes;
        } else {
            if (!o.exhaustive) ++rep.unverifiedFailures;
            rep.failures.push_back(std::move(o));
        }
    }

    // Fixed adversarial battery: the max-product-free witness, one
    // translate of it, and the complement of the largest proper cyclic
    // subgroup. Sets below the epsilon*|G| hypothesis are recorded as
    // skipped.
    auto pushBattery = [&](const std::string& label, const std::vector<std::int64_t>& values) {
        QuasiExperimentReport::BatteryEntry e;
        e.label = label;
        if (static_cast<std::int64_t>(values.size()) < setSize) {
            e.skippedSmall = true;
            e.outcome.setValues = values;
        } else {
            GroupSubset a(g);
            for (std::int64_t v : values) a.add(v);
            e.outcome = searchSet(g, a, n, allowExhaustive);
            if (!e.outcome.baseFound && !e.outcome.exhaustive) ++rep.unverifiedFailures;
        }
        rep.battery.push_back(std::move(e));
    };

    MaxProductFreeResult pf = maxProductFree(g, 24, seed);
    pushBattery("max-product-free", pf.witness);
    if (!pf.witness.empty() && order > 1) {
        GroupSubset w(g);
        for (std::int64_t v : pf.witness) w.add(v);
        std::int64_t shift = g.identity() == 0 ? 1 : 0;
        pushBattery("max-product-free-translate", w.leftTranslate(shift).values());
    }
    {
        // Largest proper cyclic subgroup, smallest generator on ties.
        std::vector<std::int64_t> bestH;
        for (int x = 0; x < order; ++x) {
            auto h = g.subgroupClosure({x});
            if (static_cast<std::int64_t>(h.size()) < order && h.size() > bestH.size())
                bestH.assign(h.begin(), h.end());
        }
        if (!bestH.empty()) {
            std::vector<char> inH(static_cast<std::size_t>(order), 0);
            for (std::int64_t v : bestH) inH[static_cast<std::size_t>(v)] = 1;
            std::vector<std::int64_t> complement;
            for (std::int64_t v = 0; v < order; ++v)
                if (!inH[static_cast<std::size_t>(v)]) complement.push_back(v);
            pushBattery("cyclic-subgroup-complement", complement);
        }
    }
    return rep;
}

} // namespace sumsetlab
