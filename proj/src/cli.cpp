#include "sumsetlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "sumsetlab/certificate.hpp"
#include "sumsetlab/density.hpp"
#include "sumsetlab/error.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/group_subset.hpp"
#include "sumsetlab/quasirandom.hpp"
#include "sumsetlab/stability.hpp"
#include "sumsetlab/sumsets.hpp"

namespace sumsetlab {

namespace {

// ---------------------------------------------------------------------------
// Flag canonicalization and input digests. The canonical flag line is the
// sorted "key=value" list of semantic options; --jobs is execution-only and
// deliberately excluded so parallel runs certify identically.

using FlagMap = std::map<std::string, std::string>;

std::string canonicalFlagLine(const FlagMap& flags) {
    std::string line;
    for (const auto& [k, v] : flags) {
        if (!line.empty()) line.push_back(' ');
        line += k + "=" + v;
    }
    return line;
}

std::string readFileBytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot open input file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> referencedFiles(const FlagMap& flags) {
    std::vector<std::string> files;
    for (const auto& [k, v] : flags) {
        if (k == "set" || k == "relation") files.push_back(v);
        if (k == "folner" && (v.rfind("shifted:", 0) == 0 || v.rfind("explicit:", 0) == 0))
            files.push_back(v.substr(v.find(':') + 1));
        if (k == "group" && v.rfind("cayley:", 0) == 0)
            files.push_back(v.substr(v.find(':') + 1));
    }
    return files;
}

std::string computeDigest(const FlagMap& flags, std::uint64_t seed) {
    std::uint64_t h = fnv1a64(canonicalFlagLine(flags));
    h = fnv1a64("\nseed=" + std::to_string(seed), h);
    for (const auto& path : referencedFiles(flags)) {
        h = fnv1a64("\nfile\n", h);
        h = fnv1a64(readFileBytes(path), h);
    }
    return hex64(h);
}

FlagMap parseFlagLine(const std::string& line) {
    FlagMap flags;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::SchemaMismatch, "malformed flags entry '" + tok + "'");
        flags[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return flags;
}

void emitHeader(Certificate& cert, const std::string& command, const FlagMap& flags, std::uint64_t seed) {
    cert.add("tool", kToolVersion);
    cert.add("command", command);
    cert.add("flags", canonicalFlagLine(flags));
    cert.add("inputs-digest", computeDigest(flags, seed));
    cert.add("seed", static_cast<std::int64_t>(seed));
}

std::vector<std::vector<std::int64_t>> parseTranslateLists(const std::string& s) {
    std::vector<std::vector<std::int64_t>> out;
    std::istringstream ss(s);
    std::string tuple;
    while (std::getline(ss, tuple, ';')) {
        if (tuple.empty()) continue;
        out.push_back(splitInts(tuple, ','));
        if (out.back().empty()) throw Error(ErrorCode::InvalidInput, "empty translate tuple");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Command payloads.

struct Ctx {
    FlagMap flags;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::ostream* out;
};

int emit(const Ctx& ctx, Certificate& cert, int code) {
    cert.write(*ctx.out);
    return code;
}

int cmdDensity(const Ctx& ctx) {
    const std::string& mode = ctx.flags.at("mode");
    Certificate cert;
    emitHeader(cert, "density", ctx.flags, ctx.seed);
    if (mode == "upper" && ctx.flags.count("group")) {
        // Finite groups carry the constant whole-group family.
        GroupTable g = buildGroup(ctx.flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, ctx.flags.at("set"));
        DensityReport r = upperDensity(a);
        cert.add("mode", "upper");
        cert.add("value", r.value.str());
        cert.add("witness-index", r.witnessIndex);
        cert.add("verified", "true");
        return emit(ctx, cert, 0);
    }
    IntWindowSet a = parseIntSetFile(ctx.flags.at("set"));
    if (mode == "upper") {
        FolnerFamily f = FolnerFamily::parse(ctx.flags.at("folner"));
        DensityReport r = upperDensity(a, f);
        cert.add("mode", "upper");
        cert.add("value", r.value.str());
        cert.add("witness-index", r.witnessIndex);
        cert.add("verified", "true");
        return emit(ctx, cert, 0);
    }
    if (mode == "banach") {
        std::int64_t n = std::stoll(ctx.flags.at("n"));
        DensityReport r = banachDensityWindowed(a, n);
        cert.add("mode", "banach");
        cert.add("value", r.value.str());
        cert.add("witness-m", r.witnessIndex);
        cert.add("verified", "true");
        return emit(ctx, cert, 0);
    }
    if (mode == "averaging") {
        FolnerFamily f = FolnerFamily::parse(ctx.flags.at("folner"));
        std::int64_t n = std::stoll(ctx.flags.at("n"));
        AveragingReport r = averagingCheck(a, f, n);
        cert.add("mode", "averaging");
        cert.add("upper", r.upper.str());
        cert.add("witness-m", r.witnessM);
        cert.add("window-count", r.windowCount);
        cert.add("window-density", r.windowDensity.str());
        cert.add("ok", r.ok ? "true" : "false");
        cert.add("verified", r.ok ? "true" : "false");
        return emit(ctx, cert, r.ok ? 0 : 1);
    }
    throw Error(ErrorCode::InvalidInput, "density mode must be upper, banach or averaging");
}

void addMeasurePayload(Certificate& cert, const MeasureApprox& m) {
    cert.add("requests", static_cast<std::int64_t>(m.requests.size()));
    for (std::size_t i = 0; i < m.requests.size(); ++i)
        cert.add("request", std::to_string(i) + " " + joinInts(m.requests[i], ','));
    cert.add("final-index", m.finalIndex);
    cert.add("final-set-size", m.finalSetSize);
    cert.add("mu-a", m.valueOfA.str());
    for (std::size_t i = 0; i < m.values.size(); ++i)
        cert.add("mu", std::to_string(i) + " " + m.values[i].str());
    std::vector<std::int64_t> head;
    for (std::size_t i = 0; i < m.diagIndices.size() && i < 16; ++i)
        head.push_back(m.diagIndices[i]);
    cert.add("diag-head", joinInts(head, ','));
    cert.add("verified", "true"); // values are exact counts at the final diagonal set
}

int cmdBergMeasure(const Ctx& ctx) {
    auto requests = parseTranslateLists(ctx.flags.at("translates"));
    int depth = static_cast<int>(std::stoll(ctx.flags.at("depth")));
    Certificate cert;
    emitHeader(cert, "berg-measure", ctx.flags, ctx.seed);
    cert.add("depth", depth);
    MeasureApprox m;
    if (ctx.flags.count("group")) {
        GroupTable g = buildGroup(ctx.flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, ctx.flags.at("set"));
        m = bergMeasureApprox(a, requests, depth);
    } else {
        IntWindowSet a = parseIntSetFile(ctx.flags.at("set"));
        FolnerFamily f = FolnerFamily::parse(ctx.flags.at("folner"));
        m = bergMeasureApprox(a, requests, f, depth);
    }
    addMeasurePayload(cert, m);
    return emit(ctx, cert, 0);
}

void addIpPayload(Certificate& cert, const IpExtractResult& r) {
    cert.add("status", r.success ? "success" : "failure");
    if (!r.base.empty()) cert.add("base", joinInts(r.base));
    cert.add("nested-sizes", joinInts(r.nestedSizes));
    if (r.success) {
        cert.add("words-checked", static_cast<std::int64_t>(r.wordsChecked));
    } else {
        cert.add("failed-stage", r.failedStage);
        cert.add("best-intersection", r.bestIntersection);
        cert.add("best-candidate", r.haveCandidate ? std::to_string(r.bestCandidate) : "none");
    }
    cert.add("verified", r.success ? "true" : "false");
}

int cmdIpExtract(const Ctx& ctx) {
    int depth = static_cast<int>(std::stoll(ctx.flags.at("depth")));
    Rational floor = parseRational(ctx.flags.at("width-floor"));
    Certificate cert;
    emitHeader(cert, "ip-extract", ctx.flags, ctx.seed);
    cert.add("depth", depth);
    cert.add("width-floor", floor.str());
    IpExtractResult r;
    if (ctx.flags.count("group")) {
        GroupTable g = buildGroup(ctx.flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, ctx.flags.at("set"));
        r = ipExtract(a, depth, floor);
    } else {
        IntWindowSet a = parseIntSetFile(ctx.flags.at("set"));
        r = ipExtract(a, depth, floor);
    }
    addIpPayload(cert, r);
    return emit(ctx, cert, r.success ? 0 : 1);
}

void addNathansonPayload(Certificate& cert, const NathansonResult& r) {
    cert.add("status", r.success ? "success" : "failure");
    for (std::size_t i = 0; i < r.parts.size(); ++i)
        cert.add("part", std::to_string(i + 1) + " " + joinInts(r.parts[i]));
    cert.add("b-size", static_cast<std::int64_t>(r.bValues.size()));
    cert.add("b-density", r.bDensity.str());
    if (!r.bValues.empty()) cert.add("b", joinInts(r.bValues));
    if (r.failedRound) cert.add("failed-round", r.failedRound);
    cert.add("verified", r.containmentVerified ? "true" : "false");
}

int cmdNathanson(const Ctx& ctx) {
    int n = static_cast<int>(std::stoll(ctx.flags.at("n")));
    int m = static_cast<int>(std::stoll(ctx.flags.at("m")));
    Rational floor = parseRational(ctx.flags.at("width-floor"));
    Certificate cert;
    emitHeader(cert, "nathanson", ctx.flags, ctx.seed);
    cert.add("n", n);
    cert.add("m", m);
    cert.add("width-floor", floor.str());
    NathansonResult r;
    if (ctx.flags.count("group")) {
        GroupTable g = buildGroup(ctx.flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, ctx.flags.at("set"));
        r = nathansonDecompose(a, n, m, floor);
    } else {
        IntWindowSet a = parseIntSetFile(ctx.flags.at("set"));
        r = nathansonDecompose(a, n, m, floor);
    }
    addNathansonPayload(cert, r);
    return emit(ctx, cert, r.success ? 0 : 1);
}

void addProductsetPayload(Certificate& cert, const ProductsetResult& r) {
    cert.add("status", r.success ? "success" : "failure");
    cert.add("achieved-k", r.achievedK);
    cert.add("staircase-length", r.staircaseLength);
    if (!r.bSide.empty()) cert.add("b", joinInts(r.bSide));
    if (!r.cSide.empty()) cert.add("c", joinInts(r.cSide));
    for (const auto& w : r.bWitnesses)
        cert.add("witness", std::to_string(w[0]) + " " + std::to_string(w[1]) + " " + std::to_string(w[2]));
    cert.add("verified", r.success ? "true" : "false"); // grids are checked exhaustively before success
}

int cmdProductset(const Ctx& ctx) {
    int k = static_cast<int>(std::stoll(ctx.flags.at("k")));
    bool constrain = ctx.flags.count("constrain-b") && ctx.flags.at("constrain-b") == "true";
    Certificate cert;
    emitHeader(cert, "productset", ctx.flags, ctx.seed);
    cert.add("k", k);
    cert.add("constrained", constrain ? "true" : "false");
    ProductsetResult r;
    if (ctx.flags.count("group")) {
        GroupTable g = buildGroup(ctx.flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, ctx.flags.at("set"));
        r = productsetSearch(a, k, constrain);
        addProductsetPayload(cert, r);
        // Group runs carry the stability annotation so grid outcomes and
        // ladder indices can be correlated from the certificate alone.
        IndexReport st = setStabilityIndex(a);
        cert.add("stability-index", st.value);
        cert.add("stability-exact", st.exact ? "true" : "false");
    } else {
        IntWindowSet a = parseIntSetFile(ctx.flags.at("set"));
        r = productsetSearch(a, k, constrain);
        addProductsetPayload(cert, r);
    }
    return emit(ctx, cert, r.success ? 0 : 1);
}

int cmdProductFree(const Ctx& ctx) {
    GroupTable g = buildGroup(ctx.flags.at("group"));
    GroupSubset a = parseGroupSubsetFile(g, ctx.flags.at("set"));
    ProductFreeVerdict v = productFreeCheck(a);
    Certificate cert;
    emitHeader(cert, "product-free", ctx.flags, ctx.seed);
    cert.add("product-free", v.productFree ? "true" : "false");
    if (!v.productFree)
        cert.add("witness", std::to_string(v.b) + " " + std::to_string(v.c) + " " + std::to_string(v.product));
    cert.add("verified", "true"); // the exhaustive scan is the verification
    return emit(ctx, cert, 0);
}

int cmdMaxProductFree(const Ctx& ctx) {
    GroupTable g = buildGroup(ctx.flags.at("group"));
    int bound = static_cast<int>(std::stoll(ctx.flags.at("exact-bound")));
    MaxProductFreeResult r = maxProductFree(g, bound, ctx.seed);
    Certificate cert;
    emitHeader(cert, "max-product-free", ctx.flags, ctx.seed);
    cert.add("size", r.size);
    cert.add("exact", r.exact ? "true" : "false");
    if (!r.witness.empty()) cert.add("witness", joinInts(r.witness));
    GroupSubset check(g);
    for (std::int64_t v : r.witness) check.add(v);
    cert.add("verified", productFreeCheck(check).productFree ? "true" : "false");
    return emit(ctx, cert, 0);
}

int cmdQrDegree(const Ctx& ctx) {
    GroupTable g = buildGroup(ctx.flags.at("group"));
    CharacterDegrees cd = characterDegrees(g, ctx.seed);
    Certificate cert;
    emitHeader(cert, "qr-degree", ctx.flags, ctx.seed);
    cert.add("classes", cd.classCount);
    cert.add("prime", cd.prime);
    cert.add("method", cd.exactModular ? "exact-modular" : "verified-small");
    std::vector<std::int64_t> ds(cd.degrees.begin(), cd.degrees.end());
    cert.add("degrees", joinInts(ds));
    cert.add("d", quasirandomDegree(g, ctx.seed));
    cert.add("verified", "true"); // sum-of-squares, count, divisibility checked before return
    return emit(ctx, cert, 0);
}

int cmdQrExperiment(const Ctx& ctx) {
    GroupTable g = buildGroup(ctx.flags.at("group"));
    Rational eps = parseRational(ctx.flags.at("epsilon"));
    int n = static_cast<int>(std::stoll(ctx.flags.at("n")));
    int trials = static_cast<int>(std::stoll(ctx.flags.at("trials")));
    QuasiExperimentReport rep = quasiProductsExperiment(g, eps, n, trials, ctx.seed, ctx.jobs);
    Certificate cert;
    emitHeader(cert, "qr-experiment", ctx.flags, ctx.seed);
    cert.add("epsilon", eps.str());
    cert.add("n", n);
    cert.add("trials", trials);
    cert.add("successes", rep.successes);
    cert.add("unverified-failures", rep.unverifiedFailures);
    for (const auto& f : rep.failures) {
        cert.add("failure-set", joinInts(f.setValues));
        cert.add("failure-verified", f.verifiedCounterexample ? "true" : "false");
    }
    for (const auto& e : rep.battery) {
        cert.add("battery-label", e.label);
        std::string status = e.skippedSmall ? "skipped-small"
                             : e.outcome.baseFound ? "success"
                             : e.outcome.verifiedCounterexample ? "counterexample"
                                                                : "unverified";
        cert.add("battery-status", status);
        cert.add("battery-set", e.outcome.setValues.empty() ? "none" : joinInts(e.outcome.setValues));
        cert.add("battery-base", e.outcome.baseFound ? joinInts(e.outcome.base) : "none");
    }
    cert.add("verified", rep.unverifiedFailures == 0 ? "true" : "false");
    return emit(ctx, cert, 0);
}

int cmdPattern(const Ctx& ctx, const std::string& command) {
    int bound = static_cast<int>(std::stoll(ctx.flags.at("exact-bound")));
    FiniteRelation rel = [&] {
        if (command == "set-stability") {
            GroupTable g = buildGroup(ctx.flags.at("group"));
            GroupSubset a = parseGroupSubsetFile(g, ctx.flags.at("set"));
            return FiniteRelation::fromGroupSet(a);
        }
        return FiniteRelation::parseFile(ctx.flags.at("relation"));
    }();
    IndexReport rep = command == "equation" ? equationIndex(rel, bound) : ladderIndex(rel, bound);
    Certificate cert;
    emitHeader(cert, command, ctx.flags, ctx.seed);
    cert.add("kind", rep.kind == PatternKind::Ladder ? "ladder" : "equation");
    cert.add("value", rep.value);
    cert.add("exact", rep.exact ? "true" : "false");
    if (rep.value > 0) {
        std::vector<std::int64_t> a(rep.aSeq.begin(), rep.aSeq.end()), b(rep.bSeq.begin(), rep.bSeq.end());
        cert.add("a-seq", joinInts(a));
        cert.add("b-seq", joinInts(b));
    }
    bool witnessOk = rep.value == 0 || verifyPattern(rel, rep.kind, rep.aSeq, rep.bSeq);
    cert.add("verified", witnessOk ? "true" : "false");
    return emit(ctx, cert, 0);
}

// ---------------------------------------------------------------------------
// Certificate verification: re-check the claimed identities without
// re-running the searches.

struct VerifyOutput {
    std::ostream* out;
    std::vector<std::string> flags;
    bool rejected = false;
    std::string reason;

    void weaker(const std::string& what) { flags.push_back(what); }
    int finish(const std::string& command) {
        *out << "verify " << command << "\n";
        if (rejected) {
            *out << "verdict rejected\n";
            *out << "reason " << reason << "\n";
            return 1;
        }
        *out << "verdict verified\n";
        for (const auto& f : flags) *out << "flag " << f << "\n";
        return 0;
    }
    void reject(const std::string& why) {
        if (!rejected) { rejected = true; reason = why; }
    }
};

// Loads either kind of ambient set from the recorded flags. Exactly one of
// the two optionals is engaged.
struct LoadedSet {
    std::unique_ptr<GroupTable> group;
    std::unique_ptr<GroupSubset> gset;
    std::unique_ptr<IntWindowSet> zset;

    bool isGroup() const { return gset != nullptr; }
    std::int64_t universeSize() const { return isGroup() ? gset->universeSize() : zset->universeSize(); }
    bool contains(std::int64_t v) const { return isGroup() ? gset->contains(v) : zset->contains(v); }
    std::int64_t mulElem(std::int64_t a, std::int64_t b) const {
        return isGroup() ? gset->mulElem(a, b) : IntWindowSet::mulElem(a, b);
    }
    std::int64_t invElem(std::int64_t a) const { return isGroup() ? gset->invElem(a) : IntWindowSet::invElem(a); }
    std::int64_t identityElem() const { return isGroup() ? gset->identityElem() : IntWindowSet::identityElem(); }
};

LoadedSet loadSetFromFlags(const FlagMap& flags) {
    LoadedSet ls;
    if (flags.count("group")) {
        ls.group = std::make_unique<GroupTable>(buildGroup(flags.at("group")));
        ls.gset = std::make_unique<GroupSubset>(parseGroupSubsetFile(*ls.group, flags.at("set")));
    } else {
        ls.zset = std::make_unique<IntWindowSet>(parseIntSetFile(flags.at("set")));
    }
    return ls;
}

void verifyIpExtract(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    if (cert.get("status") != "success") {
        vo.weaker("failure-report-not-rechecked");
        return;
    }
    LoadedSet ls = loadSetFromFlags(flags);
    int depth = static_cast<int>(std::stoll(cert.get("depth")));
    auto base = splitInts(cert.get("base"));
    auto recorded = splitInts(cert.get("nested-sizes"));
    auto checkOne = [&](auto& a) {
        auto cur = a;
        std::vector<std::int64_t> sizes{cur.count()};
        for (std::int64_t b : base) {
            if (!cur.contains(b)) {
                vo.reject("base element " + std::to_string(b) + " is not in its nested set");
                return;
            }
            cur.restrictLeftInverseTranslate(cur, b);
            sizes.push_back(cur.count());
        }
        if (sizes != recorded) {
            vo.reject("nested-set recomputation does not reproduce the recorded sizes");
            return;
        }
        FpVerdict fp = verifyFP(base, a, depth);
        if (!fp.ok)
            vo.reject("FP violation at indices (" + joinInts(std::vector<std::int64_t>(fp.violator.indices.begin(), fp.violator.indices.end()), ',') +
                      ") value " + std::to_string(fp.violator.value));
    };
    if (ls.isGroup()) checkOne(*ls.gset); else checkOne(*ls.zset);
}

void verifyNathanson(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    if (cert.get("status") != "success") {
        vo.weaker("failure-report-not-rechecked");
        return;
    }
    LoadedSet ls = loadSetFromFlags(flags);
    int m = static_cast<int>(std::stoll(cert.get("m")));
    if (m < 1) {
        vo.reject("part size m must be positive");
        return;
    }
    Rational floor = parseRational(cert.get("width-floor"));
    std::vector<std::vector<std::int64_t>> parts;
    for (const auto& line : cert.getAll("part")) {
        auto vals = splitInts(line);
        if (vals.empty()) throw Error(ErrorCode::SchemaMismatch, "empty part line");
        parts.push_back(std::vector<std::int64_t>(vals.begin() + 1, vals.end()));
    }
    auto bVals = cert.has("b") ? splitInts(cert.get("b")) : std::vector<std::int64_t>{};
    for (const auto& p : parts)
        if (static_cast<int>(p.size()) != m) {
            vo.reject("part size differs from m");
            return;
        }
    // Containment with an explicit witness triple on failure.
    for (const auto& p : parts)
        for (std::int64_t f : p)
            if (!ls.contains(f)) {
                vo.reject("part element " + std::to_string(f) + " is not in A");
                return;
            }
    std::vector<std::int64_t> prefixes{ls.identityElem()};
    const std::uint64_t budget = enumerationBudget();
    for (const auto& p : parts) {
        if (prefixes.size() * p.size() > budget) {
            vo.reject("decomposition has more prefix products than the verification budget");
            return;
        }
        std::vector<std::int64_t> next;
        for (std::int64_t pre : prefixes)
            for (std::int64_t f : p) next.push_back(ls.mulElem(pre, f));
        prefixes = std::move(next);
    }
    for (std::int64_t pre : prefixes)
        for (std::int64_t b : bVals) {
            if (!ls.contains(b)) {
                vo.reject("B element " + std::to_string(b) + " is not in A");
                return;
            }
            std::int64_t prod = ls.mulElem(pre, b);
            if (!ls.contains(prod)) {
                vo.reject("containment fails: prefix " + std::to_string(pre) + " times " + std::to_string(b) +
                          " = " + std::to_string(prod) + " is outside A");
                return;
            }
        }
    Rational density = ls.isGroup()
                           ? Rational(static_cast<std::int64_t>(bVals.size()), ls.universeSize())
                           : detail::nathansonDensity(*ls.zset, parts, static_cast<std::int64_t>(bVals.size()));
    if (density < floor) {
        vo.reject("listed B has density " + density.str() + " below the floor " + floor.str());
        return;
    }
    if (std::stoll(cert.get("b-size")) != static_cast<std::int64_t>(bVals.size()))
        vo.weaker("attestation-weaker b-size");
    if (parseRational(cert.get("b-density")) != density)
        vo.weaker("attestation-weaker b-density");
}

void verifyProductset(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    if (cert.get("status") != "success") {
        vo.weaker("failure-report-not-rechecked");
        return;
    }
    LoadedSet ls = loadSetFromFlags(flags);
    int k = static_cast<int>(std::stoll(cert.get("k")));
    auto b = splitInts(cert.get("b"));
    auto c = splitInts(cert.get("c"));
    if (static_cast<int>(b.size()) < k || static_cast<int>(c.size()) < k) {
        vo.reject("grid sides smaller than k");
        return;
    }
    if (b.size() * c.size() > enumerationBudget()) {
        vo.reject("grid has more products than the verification budget");
        return;
    }
    for (std::int64_t bb : b)
        for (std::int64_t cc : c) {
            std::int64_t p = ls.mulElem(bb, cc);
            if (!ls.contains(p)) {
                vo.reject("grid product " + std::to_string(bb) + "*" + std::to_string(cc) + " = " +
                          std::to_string(p) + " is outside A");
                return;
            }
        }
    if (cert.get("constrained") == "true") {
        std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> wit;
        for (const auto& line : cert.getAll("witness")) {
            auto vals = splitInts(line);
            if (vals.size() != 3) throw Error(ErrorCode::SchemaMismatch, "bad witness line");
            wit[vals[0]] = {vals[1], vals[2]};
        }
        for (std::int64_t bb : b) {
            auto it = wit.find(bb);
            if (it == wit.end()) {
                vo.reject("missing A*A^-1 witness for " + std::to_string(bb));
                return;
            }
            auto [x, y] = it->second;
            if (!ls.contains(x) || !ls.contains(y) || ls.mulElem(x, ls.invElem(y)) != bb) {
                vo.reject("invalid A*A^-1 witness for " + std::to_string(bb));
                return;
            }
        }
    }
}

void verifyBergMeasure(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    int finalIndex = static_cast<int>(std::stoll(cert.get("final-index")));
    std::int64_t finalSize = std::stoll(cert.get("final-set-size"));
    std::vector<std::vector<std::int64_t>> requests;
    for (const auto& line : cert.getAll("request")) {
        auto sp = line.find(' ');
        if (sp == std::string::npos) throw Error(ErrorCode::SchemaMismatch, "malformed request line");
        requests.push_back(splitInts(line.substr(sp + 1), ','));
    }
    if (requests.size() > 64) {
        vo.reject("more than 64 requested intersections");
        return;
    }
    if (flags.count("group")) {
        GroupTable g = buildGroup(flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, flags.at("set"));
        if (finalSize != a.universeSize()) {
            vo.reject("final set size differs from |G|");
            return;
        }
        if (parseRational(cert.get("mu-a")) != Rational(a.count(), a.universeSize())) {
            vo.reject("mu(A) does not match the group frequency");
            return;
        }
        auto muLines = cert.getAll("mu");
        for (std::size_t i = 0; i < requests.size(); ++i) {
            GroupSubset s = a;
            for (std::int64_t gv : requests[i]) s.intersectWith(a.leftTranslate(gv));
            Rational expect(s.count(), a.universeSize());
            auto sp = muLines.at(i).find(' ');
            if (parseRational(muLines.at(i).substr(sp + 1)) != expect) {
                vo.reject("mu value " + std::to_string(i) + " does not recompute");
                return;
            }
        }
        return;
    }
    IntWindowSet a = parseIntSetFile(flags.at("set"));
    FolnerFamily f = FolnerFamily::parse(flags.at("folner"));
    f.checkIndex(finalIndex);
    if (f.setSize(finalIndex) != finalSize) {
        vo.reject("final set size differs from |F_final|");
        return;
    }
    if (parseRational(cert.get("mu-a")) != Rational(f.countIn(a, finalIndex), finalSize)) {
        vo.reject("mu(A) does not recompute at the final diagonal set");
        return;
    }
    auto muLines = cert.getAll("mu");
    if (muLines.size() != requests.size()) {
        vo.reject("request and mu line counts differ");
        return;
    }
    for (std::size_t i = 0; i < requests.size(); ++i) {
        IntWindowSet s = a;
        for (std::int64_t gv : requests[i]) s.intersectWith(a.translate(gv).set);
        Rational expect(f.countIn(s, finalIndex), finalSize);
        auto sp = muLines[i].find(' ');
        if (parseRational(muLines[i].substr(sp + 1)) != expect) {
            vo.reject("mu value " + std::to_string(i) + " does not recompute");
            return;
        }
    }
}

void verifyDensity(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    const std::string mode = cert.get("mode");
    if (mode == "upper" && flags.count("group")) {
        GroupTable g = buildGroup(flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, flags.at("set"));
        if (upperDensity(a).value != parseRational(cert.get("value")))
            vo.reject("group upper density does not recompute");
        return;
    }
    IntWindowSet a = parseIntSetFile(flags.at("set"));
    if (mode == "upper") {
        FolnerFamily f = FolnerFamily::parse(flags.at("folner"));
        DensityReport r = upperDensity(a, f);
        if (r.value != parseRational(cert.get("value")) || r.witnessIndex != std::stoll(cert.get("witness-index")))
            vo.reject("upper density does not recompute");
        return;
    }
    if (mode == "banach") {
        std::int64_t n = std::stoll(flags.at("n"));
        DensityReport r = banachDensityWindowed(a, n);
        if (r.value != parseRational(cert.get("value")) || r.witnessIndex != std::stoll(cert.get("witness-m")))
            vo.reject("windowed Banach density does not recompute");
        return;
    }
    if (mode == "averaging") {
        FolnerFamily f = FolnerFamily::parse(flags.at("folner"));
        std::int64_t n = std::stoll(flags.at("n"));
        AveragingReport r = averagingCheck(a, f, n);
        bool ok = cert.get("ok") == "true";
        if (r.ok != ok || r.witnessM != std::stoll(cert.get("witness-m")) ||
            r.windowCount != std::stoll(cert.get("window-count")))
            vo.reject("averaging report does not recompute");
        return;
    }
    vo.reject("unknown density mode " + mode);
}

void verifyProductFree(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    GroupTable g = buildGroup(flags.at("group"));
    GroupSubset a = parseGroupSubsetFile(g, flags.at("set"));
    bool claimed = cert.get("product-free") == "true";
    if (claimed) {
        ProductFreeVerdict v = productFreeCheck(a);
        if (!v.productFree)
            vo.reject("set is not product-free: " + std::to_string(v.b) + "*" + std::to_string(v.c) + " = " +
                      std::to_string(v.product));
        return;
    }
    auto w = splitInts(cert.get("witness"));
    if (w.size() != 3 || !a.contains(w[0]) || !a.contains(w[1]) || a.mulElem(w[0], w[1]) != w[2] || !a.contains(w[2]))
        vo.reject("recorded witness triple does not hold");
}

void verifyMaxProductFree(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    GroupTable g = buildGroup(flags.at("group"));
    auto w = cert.has("witness") ? splitInts(cert.get("witness")) : std::vector<std::int64_t>{};
    if (static_cast<std::int64_t>(w.size()) != std::stoll(cert.get("size"))) {
        vo.reject("witness size differs from the recorded size");
        return;
    }
    GroupSubset s(g);
    for (std::int64_t v : w) {
        if (v < 0 || v >= g.order()) {
            vo.reject("witness element out of range");
            return;
        }
        s.add(v);
    }
    ProductFreeVerdict v = productFreeCheck(s);
    if (!v.productFree)
        vo.reject("witness is not product-free");
    if (cert.get("exact") == "true") vo.weaker("exactness-not-rechecked");
}

void verifyQrDegree(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    GroupTable g = buildGroup(flags.at("group"));
    auto ds = splitInts(cert.get("degrees"));
    std::int64_t sumSq = 0;
    for (std::int64_t d : ds) {
        if (d < 1 || g.order() % d != 0) {
            vo.reject("degree " + std::to_string(d) + " does not divide |G|");
            return;
        }
        sumSq += d * d;
    }
    if (sumSq != g.order()) {
        vo.reject("sum of squared degrees is " + std::to_string(sumSq) + ", not |G|");
        return;
    }
    ConjugacyData conj(g);
    if (static_cast<int>(ds.size()) != conj.classCount()) {
        vo.reject("degree count differs from the class count");
        return;
    }
    if (ds.empty() || ds.front() != 1) {
        vo.reject("trivial degree missing");
        return;
    }
    std::int64_t d = ds.size() > 1 ? ds[1] : 1;
    if (d != std::stoll(cert.get("d")))
        vo.reject("quasirandomness degree does not match the degree list");
}

void verifyQrExperiment(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    GroupTable g = buildGroup(flags.at("group"));
    int n = static_cast<int>(std::stoll(cert.get("n")));
    if (n < 1 || n > 6) {
        vo.reject("sequence length n outside [1,6]");
        return;
    }
    if (std::stoll(cert.get("successes")) > std::stoll(cert.get("trials"))) {
        vo.reject("more successes than trials");
        return;
    }
    auto checkCounterexample = [&](const std::string& joined) {
        GroupSubset a(g);
        for (std::int64_t v : splitInts(joined)) a.add(v);
        if (exhaustiveFpBase(a, n, nullptr)) {
            vo.reject("claimed counterexample admits a length-" + std::to_string(n) + " base");
            return false;
        }
        return true;
    };
    auto sets = cert.getAll("failure-set");
    auto verified = cert.getAll("failure-verified");
    if (sets.size() != verified.size()) throw Error(ErrorCode::SchemaMismatch, "failure lines mismatched");
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (verified[i] == "true" && !checkCounterexample(sets[i])) return;
    auto labels = cert.getAll("battery-label");
    auto statuses = cert.getAll("battery-status");
    auto bsets = cert.getAll("battery-set");
    auto bbases = cert.getAll("battery-base");
    if (labels.size() != statuses.size() || labels.size() != bsets.size() || labels.size() != bbases.size())
        throw Error(ErrorCode::SchemaMismatch, "battery lines mismatched");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (statuses[i] == "counterexample" && !checkCounterexample(bsets[i])) return;
        if (statuses[i] == "success") {
            GroupSubset a(g);
            for (std::int64_t v : splitInts(bsets[i])) a.add(v);
            FpVerdict fp = verifyFP(splitInts(bbases[i]), a, n);
            if (!fp.ok) {
                vo.reject("battery base for " + labels[i] + " leaves the set");
                return;
            }
        }
    }
}

void verifyPatternCert(const Certificate& cert, const FlagMap& flags, VerifyOutput& vo) {
    PatternKind kind = cert.get("kind") == "ladder" ? PatternKind::Ladder : PatternKind::Equation;
    FiniteRelation rel = [&] {
        if (flags.count("relation")) return FiniteRelation::parseFile(flags.at("relation"));
        GroupTable g = buildGroup(flags.at("group"));
        GroupSubset a = parseGroupSubsetFile(g, flags.at("set"));
        return FiniteRelation::fromGroupSet(a);
    }();
    int value = static_cast<int>(std::stoll(cert.get("value")));
    if (value < 0 || value > std::min(rel.leftSize(), rel.rightSize())) {
        vo.reject("index value exceeds the relation domains");
        return;
    }
    std::vector<int> aSeq, bSeq;
    auto narrow = [&](std::int64_t v) {
        if (v < 0 || v > std::numeric_limits<int>::max()) {
            vo.reject("witness index " + std::to_string(v) + " out of range");
            return 0;
        }
        return static_cast<int>(v);
    };
    if (cert.has("a-seq")) {
        for (std::int64_t v : splitInts(cert.get("a-seq"))) aSeq.push_back(narrow(v));
        for (std::int64_t v : splitInts(cert.get("b-seq"))) bSeq.push_back(narrow(v));
    }
    if (vo.rejected) return;
    if (static_cast<int>(aSeq.size()) != value) {
        vo.reject("witness length differs from the recorded value");
        return;
    }
    if (value > 0 && !verifyPattern(rel, kind, aSeq, bSeq)) {
        vo.reject("witness sequences do not realize the pattern");
        return;
    }
    if (cert.get("exact") == "true") vo.weaker("exactness-not-rechecked");
}

int cmdVerify(const Ctx& ctx, const std::string& certPath) {
    Certificate cert = Certificate::parseFile(certPath);
    const std::string command = cert.get("command");
    VerifyOutput vo;
    vo.out = ctx.out;
    // Certificates are untrusted bytes: anything malformed past the schema
    // level rejects rather than erroring out.
    try {
        FlagMap flags = parseFlagLine(cert.get("flags"));
        std::uint64_t seed = static_cast<std::uint64_t>(std::stoll(cert.get("seed")));
        if (computeDigest(flags, seed) != cert.get("inputs-digest")) {
            vo.reject("inputs-digest mismatch: referenced inputs changed since the run");
            return vo.finish(command);
        }
        if (command == "ip-extract") verifyIpExtract(cert, flags, vo);
        else if (command == "nathanson") verifyNathanson(cert, flags, vo);
        else if (command == "productset") verifyProductset(cert, flags, vo);
        else if (command == "berg-measure") verifyBergMeasure(cert, flags, vo);
        else if (command == "density") verifyDensity(cert, flags, vo);
        else if (command == "product-free") verifyProductFree(cert, flags, vo);
        else if (command == "max-product-free") verifyMaxProductFree(cert, flags, vo);
        else if (command == "qr-degree") verifyQrDegree(cert, flags, vo);
        else if (command == "qr-experiment") verifyQrExperiment(cert, flags, vo);
        else if (command == "ladder" || command == "equation" || command == "set-stability")
            verifyPatternCert(cert, flags, vo);
        else throw Error(ErrorCode::SchemaMismatch, "unknown certificate command '" + command + "'");
    } catch (const Error& e) {
        vo.reject(e.what());
    } catch (const std::exception& e) {
        vo.reject(std::string("malformed certificate: ") + e.what());
    }
    return vo.finish(command);
}

} // namespace

int cliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sumsetlab: finitary sumset phenomena with machine-checkable certificates"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand binds the subset it uses.
    std::string setPath, groupSpec, folnerSpec, relationPath, mode, translates, widthFloor = "1/100";
    std::string epsilon, certPath;
    std::int64_t nFlag = 0, mFlag = 0, kFlag = 0, depth = 0, trials = 0;
    std::int64_t exactBoundPattern = 40, exactBoundPf = 24;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool constrainB = false;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "deterministic generator seed");
        cmd->add_option("--jobs", jobs, "worker threads (never affects output bytes)");
    };

    CLI::App* density = app.add_subcommand("density", "upper / windowed Banach density, averaging check");
    density->add_option("--set", setPath)->required();
    density->add_option("--mode", mode)->required();
    density->add_option("--folner", folnerSpec);
    density->add_option("--group", groupSpec);
    density->add_option("--n", nFlag);
    addCommon(density);

    CLI::App* berg = app.add_subcommand("berg-measure", "finite-depth diagonal invariant-measure approximation");
    berg->add_option("--set", setPath)->required();
    berg->add_option("--folner", folnerSpec);
    berg->add_option("--group", groupSpec);
    berg->add_option("--depth", depth)->required();
    berg->add_option("--translates", translates)->required();
    addCommon(berg);

    CLI::App* ip = app.add_subcommand("ip-extract", "greedy IP-set extraction with FP verification");
    ip->add_option("--set", setPath)->required();
    ip->add_option("--group", groupSpec);
    ip->add_option("--depth", depth)->required();
    ip->add_option("--width-floor", widthFloor);
    addCommon(ip);

    CLI::App* nath = app.add_subcommand("nathanson", "F_1...F_n * B decomposition search");
    nath->add_option("--set", setPath)->required();
    nath->add_option("--group", groupSpec);
    nath->add_option("--n", nFlag)->required();
    nath->add_option("--m", mFlag)->required();
    nath->add_option("--width-floor", widthFloor);
    addCommon(nath);

    CLI::App* prod = app.add_subcommand("productset", "B*C ⊆ A grid search");
    prod->add_option("--set", setPath)->required();
    prod->add_option("--group", groupSpec);
    prod->add_option("--k", kFlag)->required();
    prod->add_flag("--constrain-b", constrainB, "require B inside A*A^-1 with witnesses");
    addCommon(prod);

    CLI::App* pf = app.add_subcommand("product-free", "exhaustive product-freeness check");
    pf->add_option("--group", groupSpec)->required();
    pf->add_option("--set", setPath)->required();
    addCommon(pf);

    CLI::App* mpf = app.add_subcommand("max-product-free", "maximum product-free subset");
    mpf->add_option("--group", groupSpec)->required();
    mpf->add_option("--exact-bound", exactBoundPf);
    addCommon(mpf);

    CLI::App* qrd = app.add_subcommand("qr-degree", "quasirandomness degree via modular character degrees");
    qrd->add_option("--group", groupSpec)->required();
    addCommon(qrd);

    CLI::App* qre = app.add_subcommand("qr-experiment", "length-n products experiment with adversarial battery");
    qre->add_option("--group", groupSpec)->required();
    qre->add_option("--epsilon", epsilon)->required();
    qre->add_option("--n", nFlag)->required();
    qre->add_option("--trials", trials)->required();
    addCommon(qre);

    CLI::App* lad = app.add_subcommand("ladder", "ladder (order-property) index");
    lad->add_option("--relation", relationPath)->required();
    lad->add_option("--exact-bound", exactBoundPattern);
    addCommon(lad);

    CLI::App* eqn = app.add_subcommand("equation", "equation index");
    eqn->add_option("--relation", relationPath)->required();
    eqn->add_option("--exact-bound", exactBoundPattern);
    addCommon(eqn);

    CLI::App* sst = app.add_subcommand("set-stability", "ladder index of R(x,y) = A(y*x)");
    sst->add_option("--group", groupSpec)->required();
    sst->add_option("--set", setPath)->required();
    sst->add_option("--exact-bound", exactBoundPattern);
    addCommon(sst);

    CLI::App* ver = app.add_subcommand("verify", "re-check a certificate against its inputs");
    ver->add_option("certificate", certPath)->required();
    addCommon(ver);

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help and friends
            out << app.help() << "\n";
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Ctx ctx;
    ctx.seed = seed;
    ctx.jobs = jobs;
    ctx.out = &out;
    auto put = [&](const std::string& k, const std::string& v) {
        if (!v.empty()) ctx.flags[k] = v;
    };
    try {
        if (density->parsed()) {
            put("set", setPath);
            put("mode", mode);
            put("folner", folnerSpec);
            put("group", groupSpec);
            if (mode == "banach" || mode == "averaging") ctx.flags["n"] = std::to_string(nFlag);
            return cmdDensity(ctx);
        }
        if (berg->parsed()) {
            put("set", setPath);
            put("folner", folnerSpec);
            put("group", groupSpec);
            put("translates", translates);
            ctx.flags["depth"] = std::to_string(depth);
            if (!ctx.flags.count("group") && !ctx.flags.count("folner"))
                throw Error(ErrorCode::InvalidInput, "berg-measure needs --folner (integers) or --group");
            return cmdBergMeasure(ctx);
        }
        if (ip->parsed()) {
            put("set", setPath);
            put("group", groupSpec);
            ctx.flags["depth"] = std::to_string(depth);
            ctx.flags["width-floor"] = parseRational(widthFloor).str();
            return cmdIpExtract(ctx);
        }
        if (nath->parsed()) {
            put("set", setPath);
            put("group", groupSpec);
            ctx.flags["n"] = std::to_string(nFlag);
            ctx.flags["m"] = std::to_string(mFlag);
            ctx.flags["width-floor"] = parseRational(widthFloor).str();
            return cmdNathanson(ctx);
        }
        if (prod->parsed()) {
            put("set", setPath);
            put("group", groupSpec);
            ctx.flags["k"] = std::to_string(kFlag);
            if (constrainB) ctx.flags["constrain-b"] = "true";
            return cmdProductset(ctx);
        }
        if (pf->parsed()) {
            put("group", groupSpec);
            put("set", setPath);
            return cmdProductFree(ctx);
        }
        if (mpf->parsed()) {
            put("group", groupSpec);
            ctx.flags["exact-bound"] = std::to_string(exactBoundPf);
            return cmdMaxProductFree(ctx);
        }
        if (qrd->parsed()) {
            put("group", groupSpec);
            return cmdQrDegree(ctx);
        }
        if (qre->parsed()) {
            put("group", groupSpec);
            ctx.flags["epsilon"] = parseRational(epsilon).str();
            ctx.flags["n"] = std::to_string(nFlag);
            ctx.flags["trials"] = std::to_string(trials);
            return cmdQrExperiment(ctx);
        }
        if (lad->parsed() || eqn->parsed()) {
            put("relation", relationPath);
            ctx.flags["exact-bound"] = std::to_string(exactBoundPattern);
            return cmdPattern(ctx, lad->parsed() ? "ladder" : "equation");
        }
        if (sst->parsed()) {
            put("group", groupSpec);
            put("set", setPath);
            ctx.flags["exact-bound"] = std::to_string(exactBoundPattern);
            return cmdPattern(ctx, "set-stability");
        }
        if (ver->parsed()) return cmdVerify(ctx, certPath);
        err << "usage error: no subcommand\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace sumsetlab
