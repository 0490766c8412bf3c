#pragma once

#include <vector>

#include "ralsfa/signal.hpp"

namespace ralsfa {

// Unitary forward transform: S_hat(w) = N^(-d/2) sum_t S(t) e^{-2 pi i <w,t>/N}.
struct DenseSpectrum {
    std::vector<cplx> coef;  // row-major over frequency vectors
    i64 n = 0;
    int d = 1;

    cplx at(std::span<const i64> w) const { return coef[static_cast<std::size_t>(linear_index(w, n))]; }
    cplx at1(i64 w) const { return coef[static_cast<std::size_t>(mod_n(w, n))]; }
    double energy() const;
};

inline constexpr i64 kDenseCapDefault = i64{1} << 24;

// Quadratic-time reference transform; refuses above the point cap.
DenseSpectrum dft_naive(const std::vector<cplx>& dense, i64 n, int d, i64 cap = kDenseCapDefault);
std::vector<cplx> idft_naive(const DenseSpectrum& spec, i64 cap = kDenseCapDefault);

// O(N log N) for arbitrary N: radix-2 when N is a power of two, chirp-z
// (Bluestein) otherwise; d-D applies the 1-D transform along each axis.
DenseSpectrum fft(const std::vector<cplx>& dense, i64 n, int d);
std::vector<cplx> ifft(const DenseSpectrum& spec);

// The B largest coefficients as a sparse representation (R_opt^B).
SparseRepresentation top_modes(const DenseSpectrum& spec, i64 b);

}  // namespace ralsfa
