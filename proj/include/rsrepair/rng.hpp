#pragma once

#include <cstdint>

namespace rsrepair {

/// Counter-based seeded generator (splitmix64). Deterministic across
/// platforms, trivially replayable from (seed, counter).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n), exact via rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

private:
    std::uint64_t state_;
};

} // namespace rsrepair
