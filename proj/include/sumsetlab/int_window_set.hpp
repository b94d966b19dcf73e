#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "sumsetlab/bits.hpp"
#include "sumsetlab/error.hpp"

namespace sumsetlab {

// A subset of the integer window [lo, hi]. All operations stay inside the
// window; anything a translate pushes outside is counted and reported, not
// silently dropped, so callers can tell when the window needs widening.
class IntWindowSet {
public:
    using Elem = std::int64_t;

    IntWindowSet() : lo_(0), hi_(0), bits_(1) {}
    IntWindowSet(Elem lo, Elem hi);

    Elem lo() const { return lo_; }
    Elem hi() const { return hi_; }
    std::int64_t windowLen() const { return hi_ - lo_ + 1; }
    std::int64_t universeSize() const { return windowLen(); }

    bool inWindow(Elem v) const { return v >= lo_ && v <= hi_; }
    bool contains(Elem v) const { return inWindow(v) && bits_.test(pos(v)); }
    void add(Elem v);
    void remove(Elem v);
    std::int64_t count() const { return static_cast<std::int64_t>(bits_.count()); }
    bool empty() const { return !bits_.any(); }

    bool sameWindow(const IntWindowSet& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
    bool operator==(const IntWindowSet& o) const { return sameWindow(o) && bits_ == o.bits_; }

    std::vector<Elem> values() const;
    Elem smallest() const; // throws on empty

    struct Translated; // { set, clipped }
    // {g + a : a in A} within the window.
    Translated translate(Elem g) const;
    // {-a : a in A} within the window.
    Translated negate() const;

    // a^{-1} * A in additive notation: {x : x + a in A}.
    IntWindowSet leftInverseTranslate(Elem a) const;

    void intersectWith(const IntWindowSet& o);
    void uniteWith(const IntWindowSet& o);
    static IntWindowSet intersect(const IntWindowSet& a, const IntWindowSet& b);

    std::int64_t intersectionCount(const IntWindowSet& o) const { return static_cast<std::int64_t>(bits_.andCount(o.bits_)); }

    // |this ∩ a^-1·other| (= |this ∩ (other - a)|) without materializing.
    std::int64_t scoreLeftInverseTranslate(const IntWindowSet& other, Elem a) const {
        if (a > 2 * kMaxBound || a < -2 * kMaxBound) return 0;
        return static_cast<std::int64_t>(bits_.andShiftCount(other.bits_, a));
    }
    // this := this ∩ a^-1·other. Self-aliasing needs a copy: the shifted
    // read would otherwise see already-masked words.
    void restrictLeftInverseTranslate(const IntWindowSet& other, Elem a) {
        if (a > 2 * kMaxBound || a < -2 * kMaxBound) {
            bits_.clear();
            return;
        }
        if (&other == this) {
            Bitset copy = bits_;
            bits_.andShiftInPlace(copy, a);
        } else {
            bits_.andShiftInPlace(other.bits_, a);
        }
    }

    // |A ∩ [a, b]| by direct scan (prefix-free; callers needing many windows
    // build their own prefix sums from values()).
    std::int64_t countInRange(Elem a, Elem b) const;

    // Ambient hooks shared with GroupSubset so the search code is generic.
    // Overflow saturates to a sentinel no window can contain; verification
    // paths feed these untrusted certificate values.
    static Elem mulElem(Elem a, Elem b) {
        Elem r;
        if (__builtin_add_overflow(a, b, &r)) return kOutside;
        return r;
    }
    static Elem invElem(Elem a) { return a == kOutside ? kOutside : -a; }
    static Elem identityElem() { return 0; }

    static constexpr Elem kOutside = std::numeric_limits<std::int64_t>::min();
    static constexpr Elem kMaxBound = std::int64_t(1) << 40;

    template <typename F>
    void forEach(F&& f) const {
        for (std::size_t p = bits_.nextSet(0); p < bits_.size(); p = bits_.nextSet(p + 1))
            f(lo_ + static_cast<Elem>(p));
    }

private:
    std::size_t pos(Elem v) const { return static_cast<std::size_t>(v - lo_); }

    Elem lo_, hi_;
    Bitset bits_;
};

struct IntWindowSet::Translated {
    IntWindowSet set;
    std::int64_t clipped = 0; // members pushed outside the window
};

inline IntWindowSet IntWindowSet::leftInverseTranslate(Elem a) const { return translate(-a).set; }

// Text format, one directive per line, composing by union:
//   window <lo> <hi>     (required first)
//   int <n>
//   interval <a> <b>
//   ap <first> <step> <count>
//   mod <r> <m>
// '#' starts a comment. Errors cite the source name and line number.
IntWindowSet parseIntSet(std::istream& in, const std::string& sourceName);
IntWindowSet parseIntSetFile(const std::string& path);
IntWindowSet parseIntSetString(const std::string& text, const std::string& sourceName = "<string>");

} // namespace sumsetlab
