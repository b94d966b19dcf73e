#include "sumsetlab/group.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "sumsetlab/rng.hpp"

namespace sumsetlab {

GroupTable::GroupTable(std::string name, int order, std::vector<std::uint16_t> mul)
    : name_(std::move(name)), order_(order), mul_(std::move(mul)) {
    if (order_ <= 0 || order_ > 65535)
        throw Error(ErrorCode::InvalidTable, "group order out of range");
    if (static_cast<std::size_t>(order_) * order_ > (std::size_t(1) << 29))
        throw Error(ErrorCode::OrderTooLarge, "multiplication table would exceed desk-scale memory");
    if (mul_.size() != static_cast<std::size_t>(order_) * order_)
        throw Error(ErrorCode::InvalidTable, "multiplication table has wrong shape");
    validate();
}

void GroupTable::validate() {
    const int n = order_;
    // Latin square: each row and column is a permutation.
    std::vector<char> seen(n);
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            int v = mul(a, b);
            if (v < 0 || v >= n || seen[v]) throw Error(ErrorCode::InvalidTable, "row " + std::to_string(a) + " is not a permutation");
            seen[v] = 1;
        }
    }
    for (int b = 0; b < n; ++b) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int a = 0; a < n; ++a) {
            int v = mul(a, b);
            if (seen[v]) throw Error(ErrorCode::InvalidTable, "column " + std::to_string(b) + " is not a permutation");
            seen[v] = 1;
        }
    }
    // Two-sided identity.
    identity_ = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) { identity_ = e; break; }
    }
    if (identity_ < 0) throw Error(ErrorCode::InvalidTable, "no two-sided identity");
    // Inverses from the table.
    inv_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int found = -1;
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == identity_) { found = b; break; }
        if (found < 0 || mul(found, a) != identity_)
            throw Error(ErrorCode::InvalidTable, "element " + std::to_string(a) + " lacks a two-sided inverse");
        inv_[a] = static_cast<std::uint16_t>(found);
    }
    // Associativity: exhaustive up to order 512, a fixed-seed sample of
    // 10^5 triples above that.
    if (n <= 512) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int ab = mul(a, b);
                for (int c = 0; c < n; ++c)
                    if (mul(ab, c) != mul(a, mul(b, c)))
                        throw Error(ErrorCode::InvalidTable, "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
            }
    } else {
        SplitMix64 rng(0x5eedu);
        for (int t = 0; t < 100000; ++t) {
            int a = static_cast<int>(rng.below(n));
            int b = static_cast<int>(rng.below(n));
            int c = static_cast<int>(rng.below(n));
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw Error(ErrorCode::InvalidTable, "associativity fails on sampled triple");
        }
    }
}

int GroupTable::elementOrder(Elem a) const {
    int k = 1;
    Elem x = a;
    while (x != identity_) { x = mul(x, a); ++k; }
    return k;
}

int GroupTable::exponent() const {
    std::int64_t e = 1;
    for (int a = 0; a < order_; ++a)
        e = std::lcm<std::int64_t>(e, elementOrder(a));
    return static_cast<int>(e);
}

bool GroupTable::isAbelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<GroupTable::Elem> GroupTable::subgroupClosure(const std::vector<Elem>& gens) const {
    std::vector<char> in(order_, 0);
    std::vector<Elem> queue;
    auto push = [&](Elem x) {
        if (!in[x]) { in[x] = 1; queue.push_back(x); }
    };
    push(identity_);
    for (Elem g : gens) push(g);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Elem x = queue[head];
        push(inv(x));
        for (std::size_t i = 0; i < queue.size(); ++i) {
            push(mul(x, queue[i]));
            push(mul(queue[i], x));
        }
    }
    std::vector<Elem> out;
    for (int x = 0; x < order_; ++x)
        if (in[x]) out.push_back(x);
    return out;
}

std::vector<GroupTable::Elem> GroupTable::derivedSubgroup() const {
    std::vector<char> gen(order_, 0);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            gen[mul(mul(a, b), mul(inv(a), inv(b)))] = 1;
    std::vector<Elem> gens;
    for (int x = 0; x < order_; ++x)
        if (gen[x]) gens.push_back(x);
    return subgroupClosure(gens);
}

namespace {

std::vector<std::uint16_t> cyclicTable(int n) {
    std::vector<std::uint16_t> mul(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mul[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint16_t>((i + j) % n);
    return mul;
}

// Dihedral group of order 2n: index a*n + i encodes s^a r^i with
// s r^i = r^{-i} s.
std::vector<std::uint16_t> dihedralTable(int n) {
    int N = 2 * n;
    std::vector<std::uint16_t> mul(static_cast<std::size_t>(N) * N);
    auto idx = [n](int a, int i) { return a * n + ((i % n) + n) % n; };
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < 2; ++b)
                for (int j = 0; j < n; ++j) {
                    int r = b == 0 ? idx(a, i + j) : idx(1 - a, j - i);
                    mul[static_cast<std::size_t>(idx(a, i)) * N + idx(b, j)] = static_cast<std::uint16_t>(r);
                }
    return mul;
}

bool permIsEven(const std::vector<int>& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0;
}

GroupTable permutationGroup(const std::string& name, int n, bool evenOnly) {
    if (n < 1 || n > 8) throw Error(ErrorCode::UnknownSpec, name + ": degree must be in [1,8]");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> elems;
    do {
        if (!evenOnly || permIsEven(p)) elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    // Lexicographic enumeration puts the identity first.
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    int N = static_cast<int>(elems.size());
    if (static_cast<std::size_t>(N) * N > (std::size_t(1) << 29))
        throw Error(ErrorCode::OrderTooLarge, name + ": multiplication table too large");
    std::vector<std::uint16_t> mul(static_cast<std::size_t>(N) * N);
    std::vector<int> comp(n);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            for (int x = 0; x < n; ++x) comp[x] = elems[i][elems[j][x]];
            mul[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint16_t>(index.at(comp));
        }
    return GroupTable(name, N, std::move(mul));
}

// Finite field of order q = p^k, k <= 3. Elements are indexed by their
// coefficient vector in base p (little-endian). Reduction polynomials are
// the Conway polynomials for (2,2), (2,3) and (3,2); see the README.
struct FiniteField {
    int p = 0, k = 0, q = 0;
    std::vector<int> addT, mulT, negT, invT;

    explicit FiniteField(int q_) {
        // red holds the coefficients of x^k after reduction, i.e. the
        // negated tail of the Conway polynomial: GF(4): x^2 = x+1,
        // GF(8): x^3 = x+1, GF(9): x^2+2x+2 gives x^2 = x+1 over F_3.
        static const struct { int q, p, k; int red[3]; } tbl[] = {
            {2, 2, 1, {0, 0, 0}},  {3, 3, 1, {0, 0, 0}},  {4, 2, 2, {1, 1, 0}},
            {5, 5, 1, {0, 0, 0}},  {7, 7, 1, {0, 0, 0}},  {8, 2, 3, {1, 1, 0}},
            {9, 3, 2, {1, 1, 0}},  {11, 11, 1, {0, 0, 0}}, {13, 13, 1, {0, 0, 0}},
        };
        const int* red = nullptr;
        for (const auto& e : tbl)
            if (e.q == q_) { p = e.p; k = e.k; q = e.q; red = e.red; }
        if (!red) throw Error(ErrorCode::UnknownSpec, "psl2: q must be a prime power <= 13");

        auto coeffs = [&](int x) {
            std::vector<int> c(k);
            for (int i = 0; i < k; ++i) { c[i] = x % p; x /= p; }
            return c;
        };
        auto pack = [&](const std::vector<int>& c) {
            int x = 0;
            for (int i = k - 1; i >= 0; --i) x = x * p + c[i];
            return x;
        };
        addT.assign(q * q, 0);
        mulT.assign(q * q, 0);
        negT.assign(q, 0);
        invT.assign(q, 0);
        for (int a = 0; a < q; ++a) {
            auto ca = coeffs(a);
            std::vector<int> cn(k);
            for (int i = 0; i < k; ++i) cn[i] = (p - ca[i]) % p;
            negT[a] = pack(cn);
            for (int b = 0; b < q; ++b) {
                auto cb = coeffs(b);
                std::vector<int> cs(k);
                for (int i = 0; i < k; ++i) cs[i] = (ca[i] + cb[i]) % p;
                addT[a * q + b] = pack(cs);
                // Polynomial product reduced by x^k = red (degree < k).
                std::vector<int> prod(2 * k - 1, 0);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                for (int d = 2 * k - 2; d >= k; --d) {
                    int c = prod[d];
                    if (!c) continue;
                    prod[d] = 0;
                    for (int i = 0; i < k; ++i)
                        prod[d - k + i] = (prod[d - k + i] + c * red[i]) % p;
                }
                prod.resize(k);
                mulT[a * q + b] = pack(prod);
            }
        }
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if (mulT[a * q + b] == 1) { invT[a] = b; break; }
    }

    int add(int a, int b) const { return addT[a * q + b]; }
    int mul(int a, int b) const { return mulT[a * q + b]; }
    int neg(int a) const { return negT[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
};

// PSL2(q) as SL2 matrices modulo the center {+-I}; the representative
// of {M, -M} is the one whose first nonzero coordinate has the smaller
// field index, and elements are indexed by sorted canonical forms with
// the identity moved to index 0.
GroupTable psl2Group(int q) {
    FiniteField F(q);
    using Mat = std::array<int, 4>;
    auto canon = [&](Mat m) {
        if (F.p == 2) return m;
        Mat n{F.neg(m[0]), F.neg(m[1]), F.neg(m[2]), F.neg(m[3])};
        for (int i = 0; i < 4; ++i) {
            if (m[i] == 0 && n[i] == 0) continue;
            return m[i] < n[i] ? m : n;
        }
        return m;
    };
    std::vector<Mat> elems;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 1)
                        elems.push_back(canon({a, b, c, d}));
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Mat id{1, 0, 0, 1};
    auto idIt = std::find(elems.begin(), elems.end(), id);
    if (idIt == elems.end()) throw Error(ErrorCode::InvalidTable, "psl2: identity missing");
    std::rotate(elems.begin(), idIt, idIt + 1);

    std::map<Mat, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    int N = static_cast<int>(elems.size());
    std::vector<std::uint16_t> mul(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const Mat& x = elems[i];
            const Mat& y = elems[j];
            Mat z{F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])),
                  F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
                  F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])),
                  F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
            mul[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint16_t>(index.at(canon(z)));
        }
    return GroupTable("psl2:" + std::to_string(q), N, std::move(mul));
}

} // namespace

GroupTable buildGroup(const std::string& spec) try {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::UnknownSpec, "group spec '" + spec + "'");
    std::string kind = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    auto argInt = [&]() {
        try {
            std::size_t used = 0;
            int v = std::stoi(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorCode::UnknownSpec, "group spec '" + spec + "': bad numeric argument");
        }
    };
    if (kind == "zn") {
        int n = argInt();
        if (n < 1 || n > 20000) throw Error(ErrorCode::UnknownSpec, "zn: n out of range");
        return GroupTable(spec, n, cyclicTable(n));
    }
    if (kind == "dihedral") {
        int n = argInt();
        if (n < 1 || n > 10000) throw Error(ErrorCode::UnknownSpec, "dihedral: n out of range");
        return GroupTable(spec, 2 * n, dihedralTable(n));
    }
    if (kind == "sym") return permutationGroup(spec, argInt(), false);
    if (kind == "alt") return permutationGroup(spec, argInt(), true);
    if (kind == "psl2") return psl2Group(argInt());
    if (kind == "cayley") return readCayleyCsvFile(arg);
    throw Error(ErrorCode::UnknownSpec, "group spec '" + spec + "'");
} catch (const std::bad_alloc&) {
    throw Error(ErrorCode::OrderTooLarge, "group spec '" + spec + "' needs more memory than available");
}

GroupTable readCayleyCsv(std::istream& in, const std::string& src) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::InvalidInput, src + ":1: empty cayley file");
    int n = 0;
    if (std::sscanf(line.c_str(), "order,%d", &n) != 1 || n <= 0)
        throw Error(ErrorCode::InvalidInput, src + ":1: expected 'order,<n>'");
    std::vector<std::uint16_t> mul;
    mul.reserve(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        if (!std::getline(in, line))
            throw Error(ErrorCode::InvalidInput, src + ":" + std::to_string(r + 2) + ": missing row");
        std::istringstream ls(line);
        std::string cell;
        int cols = 0;
        while (std::getline(ls, cell, ',')) {
            try {
                int v = std::stoi(cell);
                if (v < 0 || v >= n) throw std::out_of_range(cell);
                mul.push_back(static_cast<std::uint16_t>(v));
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidInput, src + ":" + std::to_string(r + 2) + ": bad cell '" + cell + "'");
            }
            ++cols;
        }
        if (cols != n)
            throw Error(ErrorCode::InvalidInput, src + ":" + std::to_string(r + 2) + ": expected " + std::to_string(n) + " cells");
    }
    GroupTable g("cayley", n, std::move(mul));
    if (g.identity() != 0)
        throw Error(ErrorCode::InvalidTable, src + ": identity must be index 0");
    return g;
}

GroupTable readCayleyCsvFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot open cayley file " + path);
    return readCayleyCsv(f, path);
}

void writeCayleyCsv(const GroupTable& g, std::ostream& out) {
    if (g.identity() != 0)
        throw Error(ErrorCode::InvalidTable, "cayley export requires identity at index 0");
    out << "order," << g.order() << "\n";
    for (int a = 0; a < g.order(); ++a) {
        for (int b = 0; b < g.order(); ++b)
            out << (b ? "," : "") << g.mul(a, b);
        out << "\n";
    }
}

ConjugacyData::ConjugacyData(const GroupTable& g) : g_(&g) {
    const int n = g.order();
    classOf_.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (classOf_[x] >= 0) continue;
        // x is the smallest member of its orbit since smaller elements were
        // already assigned; conjugating it by all of G covers the orbit.
        int c = static_cast<int>(reps_.size());
        reps_.push_back(x);
        classOf_[x] = c;
        std::int64_t size = 1;
        for (int gEl = 0; gEl < n; ++gEl) {
            int y = g.conj(gEl, x);
            if (classOf_[y] < 0) { classOf_[y] = c; ++size; }
        }
        sizes_.push_back(size);
    }
    invClass_.resize(reps_.size());
    for (std::size_t c = 0; c < reps_.size(); ++c)
        invClass_[c] = classOf_[g.inv(reps_[c])];
}

std::vector<std::int64_t> ConjugacyData::classConstantMatrix(int i) const {
    const GroupTable& g = *g_;
    const int n = g.order();
    const int r = classCount();
    // a_ijk = #{(x,y) in C_i x C_j : x y = z_k} for the representative z_k.
    std::vector<std::int64_t> m(static_cast<std::size_t>(r) * r, 0);
    std::vector<GroupTable::Elem> ci;
    for (int x = 0; x < n; ++x)
        if (classOf_[x] == i) ci.push_back(x);
    for (int k = 0; k < r; ++k) {
        GroupTable::Elem zk = reps_[k];
        for (GroupTable::Elem x : ci) {
            int y = g.mul(g.inv(x), zk);
            m[static_cast<std::size_t>(k) * r + classOf_[y]] += 1;
        }
    }
    return m;
}

} // namespace sumsetlab
