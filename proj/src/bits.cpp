#include "sumsetlab/bits.hpp"

namespace sumsetlab {

namespace {

// Bits s..s+63 of b as one word; positions outside [0, b.size()) read as 0.
std::uint64_t window64(const std::vector<std::uint64_t>& w, std::size_t nbits, std::int64_t s) {
    if (s >= static_cast<std::int64_t>(nbits) || s <= -64) return 0;
    auto word = [&](std::int64_t i) -> std::uint64_t {
        return (i >= 0 && i < static_cast<std::int64_t>(w.size())) ? w[static_cast<std::size_t>(i)] : 0;
    };
    std::int64_t q = s >= 0 ? s / 64 : -((-s + 63) / 64);
    std::uint64_t r = static_cast<std::uint64_t>(s - q * 64);
    std::uint64_t lo = word(q) >> r;
    std::uint64_t hi = r ? word(q + 1) << (64 - r) : 0;
    return lo | hi;
}

} // namespace

std::size_t Bitset::andShiftCount(const Bitset& o, std::int64_t shift) const {
    std::size_t c = 0;
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        if (!w_[wi]) continue;
        c += std::popcount(w_[wi] & window64(o.w_, o.n_, static_cast<std::int64_t>(wi) * 64 + shift));
    }
    return c;
}

void Bitset::andShiftInPlace(const Bitset& o, std::int64_t shift) {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        if (!w_[wi]) continue;
        w_[wi] &= window64(o.w_, o.n_, static_cast<std::int64_t>(wi) * 64 + shift);
    }
}

} // namespace sumsetlab
