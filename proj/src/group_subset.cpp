#include "sumsetlab/group_subset.hpp"

namespace sumsetlab {

void GroupSubset::add(Elem v) {
    if (v < 0 || v >= g_->order())
        throw Error(ErrorCode::InvalidInput, "element index " + std::to_string(v) + " out of range");
    bits_.set(static_cast<std::size_t>(v));
}

std::vector<GroupSubset::Elem> GroupSubset::values() const {
    std::vector<Elem> out;
    out.reserve(static_cast<std::size_t>(count()));
    forEach([&](Elem v) { out.push_back(v); });
    return out;
}

GroupSubset::Elem GroupSubset::smallest() const {
    std::size_t p = bits_.nextSet(0);
    if (p == bits_.size()) throw Error(ErrorCode::InvalidInput, "smallest() of empty set");
    return static_cast<Elem>(p);
}

GroupSubset GroupSubset::leftTranslate(Elem g) const {
    GroupSubset out(*g_);
    int gi = static_cast<int>(checkedIndex(g));
    forEach([&](Elem v) { out.bits_.set(static_cast<std::size_t>(g_->mul(gi, static_cast<int>(v)))); });
    return out;
}

GroupSubset GroupSubset::leftInverseTranslate(Elem a) const {
    return leftTranslate(g_->inv(static_cast<int>(checkedIndex(a))));
}

GroupSubset GroupSubset::inverseSet() const {
    GroupSubset out(*g_);
    forEach([&](Elem v) { out.bits_.set(static_cast<std::size_t>(g_->inv(static_cast<int>(v)))); });
    return out;
}

void GroupSubset::intersectWith(const GroupSubset& o) {
    if (g_ != o.g_) throw Error(ErrorCode::InvalidInput, "intersect across different groups");
    bits_.andWith(o.bits_);
}

void GroupSubset::uniteWith(const GroupSubset& o) {
    if (g_ != o.g_) throw Error(ErrorCode::InvalidInput, "union across different groups");
    bits_.orWith(o.bits_);
}

GroupSubset GroupSubset::intersect(const GroupSubset& a, const GroupSubset& b) {
    GroupSubset r = a;
    r.intersectWith(b);
    return r;
}

std::int64_t GroupSubset::scoreLeftInverseTranslate(const GroupSubset& other, Elem a) const {
    std::int64_t c = 0;
    int ai = static_cast<int>(checkedIndex(a));
    forEach([&](Elem s) {
        if (other.bits_.test(static_cast<std::size_t>(g_->mul(ai, static_cast<int>(s))))) ++c;
    });
    return c;
}

void GroupSubset::restrictLeftInverseTranslate(const GroupSubset& other, Elem a) {
    int ai = static_cast<int>(checkedIndex(a));
    std::vector<Elem> drop;
    forEach([&](Elem s) {
        if (!other.bits_.test(static_cast<std::size_t>(g_->mul(ai, static_cast<int>(s))))) drop.push_back(s);
    });
    for (Elem s : drop) bits_.reset(static_cast<std::size_t>(s));
}

GroupSubset parseGroupSubset(const GroupTable& g, const IntWindowSet& parsed) {
    if (parsed.lo() != 0 || parsed.hi() != g.order() - 1)
        throw Error(ErrorCode::InvalidInput,
                    "group subset window must be [0," + std::to_string(g.order() - 1) + "], got [" +
                        std::to_string(parsed.lo()) + "," + std::to_string(parsed.hi()) + "]");
    GroupSubset s(g);
    parsed.forEach([&](std::int64_t v) { s.add(v); });
    return s;
}

GroupSubset parseGroupSubsetFile(const GroupTable& g, const std::string& path) {
    return parseGroupSubset(g, parseIntSetFile(path));
}

} // namespace sumsetlab
