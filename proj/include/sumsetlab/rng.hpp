#pragma once

#include <cstdint>

namespace sumsetlab {

// SplitMix64: the single deterministic generator behind every randomized
// procedure. Seeds are user-visible; derived streams use seed + index so
// parallel trials reproduce the sequential run bit for bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) without modulo bias worth caring about at
    // desk scale (bound << 2^64).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

} // namespace sumsetlab
