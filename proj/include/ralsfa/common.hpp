#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace ralsfa {

using cplx = std::complex<double>;
using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Canonical representative of x in [0, n).
inline i64 mod_n(i64 x, i64 n) {
    i64 r = x % n;
    return r < 0 ? r + n : r;
}

inline double mod_real(double x, double n) {
    double r = std::fmod(x, n);
    return r < 0 ? r + n : r;
}

// e^{2*pi*i * num / den} with the angle reduced before evaluation.
inline cplx unit_phase(double num, double den) {
    double frac = std::fmod(num / den, 1.0);
    return std::polar(1.0, two_pi * frac);
}

}  // namespace ralsfa
