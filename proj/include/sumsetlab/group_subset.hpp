#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumsetlab/bits.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/int_window_set.hpp"

namespace sumsetlab {

// A subset of a finite group, elements by table index. Translation is a
// bijection here, so unlike the integer window there is never clipping.
class GroupSubset {
public:
    using Elem = std::int64_t; // element index widened to match IntWindowSet

    explicit GroupSubset(const GroupTable& g) : g_(&g), bits_(static_cast<std::size_t>(g.order())) {}

    const GroupTable& group() const { return *g_; }
    std::int64_t universeSize() const { return g_->order(); }

    bool contains(Elem v) const { return v >= 0 && v < g_->order() && bits_.test(static_cast<std::size_t>(v)); }
    void add(Elem v);
    void remove(Elem v) { if (v >= 0 && v < g_->order()) bits_.reset(static_cast<std::size_t>(v)); }
    std::int64_t count() const { return static_cast<std::int64_t>(bits_.count()); }
    bool empty() const { return !bits_.any(); }

    bool operator==(const GroupSubset& o) const { return g_ == o.g_ && bits_ == o.bits_; }

    std::vector<Elem> values() const;
    Elem smallest() const;

    GroupSubset leftTranslate(Elem g) const;        // {g*a}
    GroupSubset leftInverseTranslate(Elem a) const; // {a^-1*s} = a^-1*S
    GroupSubset inverseSet() const;                 // {s^-1}

    void intersectWith(const GroupSubset& o);
    void uniteWith(const GroupSubset& o);
    static GroupSubset intersect(const GroupSubset& a, const GroupSubset& b);
    std::int64_t intersectionCount(const GroupSubset& o) const { return static_cast<std::int64_t>(bits_.andCount(o.bits_)); }

    // |this ∩ a^-1·other| = #{s in this : a·s in other} without materializing.
    std::int64_t scoreLeftInverseTranslate(const GroupSubset& other, Elem a) const;
    // this := this ∩ a^-1·other.
    void restrictLeftInverseTranslate(const GroupSubset& other, Elem a);

    // Certificate verification funnels untrusted element values through
    // these; out-of-range operands are a hard error, never a table read.
    Elem checkedIndex(Elem a) const {
        if (a < 0 || a >= g_->order())
            throw Error(ErrorCode::InvalidInput, "element index " + std::to_string(a) + " out of range");
        return a;
    }
    Elem mulElem(Elem a, Elem b) const {
        return g_->mul(static_cast<int>(checkedIndex(a)), static_cast<int>(checkedIndex(b)));
    }
    Elem invElem(Elem a) const { return g_->inv(static_cast<int>(checkedIndex(a))); }
    Elem identityElem() const { return g_->identity(); }

    template <typename F>
    void forEach(F&& f) const {
        for (std::size_t p = bits_.nextSet(0); p < bits_.size(); p = bits_.nextSet(p + 1))
            f(static_cast<Elem>(p));
    }

private:
    const GroupTable* g_;
    Bitset bits_;
};

// Same text format as integer sets, interpreted over element indices;
// the window must be exactly [0, |G|-1].
GroupSubset parseGroupSubset(const GroupTable& g, const IntWindowSet& parsed);
GroupSubset parseGroupSubsetFile(const GroupTable& g, const std::string& path);

} // namespace sumsetlab
