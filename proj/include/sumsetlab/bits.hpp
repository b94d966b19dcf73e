#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace sumsetlab {

// Fixed-size bitset over 64-bit words. Positions are 0-based; the set
// types map domain values onto positions.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void clear() { for (auto& w : w_) w = 0; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }

    void andWith(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    }
    void orWith(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }
    void andNotWith(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    }

    std::size_t andCount(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    // |{p : this[p] and o[p + shift]}|, positions outside [0,n) contribute 0.
    // shift may be negative.
    std::size_t andShiftCount(const Bitset& o, std::int64_t shift) const;

    // this[p] := this[p] && o[p + shift] (out-of-range o positions read as 0).
    void andShiftInPlace(const Bitset& o, std::int64_t shift);

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

    // Smallest set position >= from, or size() if none.
    std::size_t nextSet(std::size_t from) const {
        if (from >= n_) return n_;
        std::size_t wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (w) return (wi << 6) + std::countr_zero(w);
            if (++wi == w_.size()) return n_;
            w = w_[wi];
        }
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace sumsetlab
