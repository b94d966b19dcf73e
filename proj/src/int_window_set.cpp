#include "sumsetlab/int_window_set.hpp"

#include <fstream>
#include <sstream>

namespace sumsetlab {

IntWindowSet::IntWindowSet(Elem lo, Elem hi) : lo_(lo), hi_(hi) {
    if (lo > hi) throw Error(ErrorCode::InvalidInput, "window with lo > hi");
    if (lo < -kMaxBound || hi > kMaxBound)
        throw Error(ErrorCode::InvalidInput, "window bounds exceed 2^40");
    if (hi - lo + 1 > (std::int64_t(1) << 27))
        throw Error(ErrorCode::InvalidInput, "window longer than 2^27");
    bits_ = Bitset(static_cast<std::size_t>(hi - lo + 1));
}

void IntWindowSet::add(Elem v) {
    if (!inWindow(v)) throw Error(ErrorCode::InvalidInput, "element " + std::to_string(v) + " outside window");
    bits_.set(pos(v));
}

void IntWindowSet::remove(Elem v) {
    if (inWindow(v)) bits_.reset(pos(v));
}

std::vector<IntWindowSet::Elem> IntWindowSet::values() const {
    std::vector<Elem> out;
    out.reserve(static_cast<std::size_t>(count()));
    forEach([&](Elem v) { out.push_back(v); });
    return out;
}

IntWindowSet::Elem IntWindowSet::smallest() const {
    std::size_t p = bits_.nextSet(0);
    if (p == bits_.size()) throw Error(ErrorCode::InvalidInput, "smallest() of empty set");
    return lo_ + static_cast<Elem>(p);
}

IntWindowSet::Translated IntWindowSet::translate(Elem g) const {
    Translated out{IntWindowSet(lo_, hi_), 0};
    if (g > 2 * kMaxBound || g < -2 * kMaxBound) { // every member leaves the window
        out.clipped = count();
        return out;
    }
    forEach([&](Elem v) {
        Elem t = v + g;
        if (out.set.inWindow(t)) out.set.add(t); else ++out.clipped;
    });
    return out;
}

IntWindowSet::Translated IntWindowSet::negate() const {
    Translated out{IntWindowSet(lo_, hi_), 0};
    forEach([&](Elem v) {
        Elem t = -v;
        if (out.set.inWindow(t)) out.set.add(t); else ++out.clipped;
    });
    return out;
}

void IntWindowSet::intersectWith(const IntWindowSet& o) {
    if (!sameWindow(o)) throw Error(ErrorCode::InvalidInput, "intersect across different windows");
    bits_.andWith(o.bits_);
}

void IntWindowSet::uniteWith(const IntWindowSet& o) {
    if (!sameWindow(o)) throw Error(ErrorCode::InvalidInput, "union across different windows");
    bits_.orWith(o.bits_);
}

IntWindowSet IntWindowSet::intersect(const IntWindowSet& a, const IntWindowSet& b) {
    IntWindowSet r = a;
    r.intersectWith(b);
    return r;
}

std::int64_t IntWindowSet::countInRange(Elem a, Elem b) const {
    if (a < lo_) a = lo_;
    if (b > hi_) b = hi_;
    std::int64_t c = 0;
    for (Elem v = a; v <= b; ++v)
        if (bits_.test(pos(v))) ++c;
    return c;
}

namespace {

[[noreturn]] void parseFail(const std::string& src, int line, const std::string& msg) {
    throw Error(ErrorCode::InvalidInput, src + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

IntWindowSet parseIntSet(std::istream& in, const std::string& src) {
    std::string line;
    int lineNo = 0;
    bool haveWindow = false;
    IntWindowSet set;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (!haveWindow) {
            if (op != "window") parseFail(src, lineNo, "first directive must be 'window <lo> <hi>'");
            std::int64_t lo, hi;
            if (!(ls >> lo >> hi)) parseFail(src, lineNo, "window needs two integers");
            if (lo > hi) parseFail(src, lineNo, "window lo > hi");
            try {
                set = IntWindowSet(lo, hi);
            } catch (const Error& e) {
                parseFail(src, lineNo, e.what());
            }
            haveWindow = true;
            continue;
        }
        if (op == "window") {
            parseFail(src, lineNo, "duplicate window directive");
        } else if (op == "int") {
            std::int64_t v;
            if (!(ls >> v)) parseFail(src, lineNo, "int needs one integer");
            if (!set.inWindow(v)) parseFail(src, lineNo, "int " + std::to_string(v) + " outside window");
            set.add(v);
        } else if (op == "interval") {
            std::int64_t a, b;
            if (!(ls >> a >> b)) parseFail(src, lineNo, "interval needs two integers");
            if (a > b) parseFail(src, lineNo, "interval a > b");
            if (a < set.lo() || b > set.hi()) parseFail(src, lineNo, "interval exceeds window");
            for (std::int64_t v = a; v <= b; ++v) set.add(v);
        } else if (op == "ap") {
            std::int64_t first, step, n;
            if (!(ls >> first >> step >> n)) parseFail(src, lineNo, "ap needs first step count");
            if (n < 0) parseFail(src, lineNo, "ap count negative");
            for (std::int64_t i = 0, v = first; i < n; ++i, v += step) {
                if (!set.inWindow(v)) parseFail(src, lineNo, "ap leaves window at " + std::to_string(v));
                set.add(v);
            }
        } else if (op == "mod") {
            std::int64_t r, m;
            if (!(ls >> r >> m)) parseFail(src, lineNo, "mod needs residue and modulus");
            if (m <= 0) parseFail(src, lineNo, "mod modulus must be positive");
            for (std::int64_t v = set.lo(); v <= set.hi(); ++v) {
                std::int64_t rem = v % m;
                if (rem < 0) rem += m;
                if (rem == ((r % m) + m) % m) set.add(v);
            }
        } else {
            parseFail(src, lineNo, "unknown directive '" + op + "'");
        }
    }
    if (!haveWindow) parseFail(src, lineNo ? lineNo : 1, "missing window directive");
    return set;
}

IntWindowSet parseIntSetFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot open set file " + path);
    return parseIntSet(f, path);
}

IntWindowSet parseIntSetString(const std::string& text, const std::string& src) {
    std::istringstream ss(text);
    return parseIntSet(ss, src);
}

} // namespace sumsetlab
