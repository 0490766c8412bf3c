#pragma once

#include <cmath>
#include <cstdint>

#include "ralsfa/common.hpp"

namespace ralsfa {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream: deterministic across platforms, cheap to derive.
// Streams derived from the same master seed with distinct (a, b) ids are
// independent for our purposes, so logical tasks can own private streams.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc909ULL) {
        // decorrelate trivially related seeds
        splitmix64(state_);
    }

    static RngStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
        std::uint64_t s = master;
        s = splitmix64(s) ^ (a * 0x9e3779b97f4a7c15ULL);
        s = splitmix64(s) ^ (b * 0xc2b2ae3d27d4eb4fULL);
        return RngStream(splitmix64(s));
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform on [0, n); modulo bias is < n / 2^64, irrelevant at our sizes.
    i64 uniform_index(i64 n) { return static_cast<i64>(next_u64() % static_cast<std::uint64_t>(n)); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard complex Gaussian: independent N(0,1) real and imaginary parts.
    cplx gaussian_pair() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }

private:
    std::uint64_t state_;
};

// Deterministic per-index noise: complex Gaussian with E|z|^2 = sigma^2
// (sigma^2/2 per component), reproducible without materializing the grid.
inline cplx noise_at(std::uint64_t seed, std::uint64_t linear_index, double sigma) {
    if (sigma == 0.0) return {0.0, 0.0};
    RngStream s = RngStream::derive(seed, 0x5e15ULL, linear_index);
    return s.gaussian_pair() * (sigma / std::numbers::sqrt2);
}

}  // namespace ralsfa
