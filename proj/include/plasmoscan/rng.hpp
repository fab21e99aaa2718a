#pragma once

#include <cstdint>

namespace plasmoscan {

/// splitmix64 (Vigna). Fully specified 64-bit generator so that seeded
/// fixtures are reproducible across platforms and builds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1), 53-bit mantissa.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0,n). Plain modulo; the bias is immaterial for the
    /// small ranges used here.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

    /// Uniform integer in [lo,hi], inclusive.
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

}  // namespace plasmoscan
