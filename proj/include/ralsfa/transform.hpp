#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ralsfa/rng.hpp"
#include "ralsfa/signal.hpp"

namespace ralsfa {

// sigma^-1 mod n via the extended Euclidean algorithm; absent when gcd > 1.
std::optional<i64> mod_inverse(i64 sigma, i64 n);

// Spectral map omega -> sigma*omega + theta on Z_N, realized in the time
// domain by modulation and index dilation with sigma_star = sigma^-1 mod N.
struct FrequencyPermutation1D {
    i64 theta = 0;
    i64 sigma = 1;
    std::optional<i64> sigma_star = 1;

    // theta uniform on [0,N), sigma uniform on [1,N) resampled until coprime
    // with N (at most max_retries draws, then failure).
    static FrequencyPermutation1D random(i64 n, RngStream& rng, int max_retries = 64);

    i64 forward_freq(i64 omega, i64 n) const;   // omega -> sigma_star*(omega - theta)
    i64 original_freq(i64 located, i64 n) const;  // located -> sigma*located + theta
};

// (R_{theta,sigma} S)(t) = e^{-2 pi i theta sigma* t / N} S(sigma* t mod N).
cplx sample_permuted(const SignalOracle& s, const FrequencyPermutation1D& p, i64 t);

std::shared_ptr<SignalOracle> permuted_oracle(std::shared_ptr<const SignalOracle> s,
                                              FrequencyPermutation1D p);

// Box-car filter H_k: 2k+1 taps of value sqrt(N)/(2k+1) on [-k, k].
struct BoxCarFilter {
    int k = 1;
    double tap(i64 n) const;
    int tap_count() const { return 2 * k + 1; }
};

// Dirichlet kernel sin(pi(2k+1)w/n) / ((2k+1) sin(pi w/n)), with the
// removable singularity evaluated as 1.
double dirichlet_response(int k, i64 omega, i64 n);

// (S * H_{k,j})(t) with the filter modulation e^{2 pi i j i / shift_divisor}:
// exactly 2k+1 oracle evaluations.
cplx sample_convolved(const SignalOracle& s, const BoxCarFilter& f, double modulation_j,
                      i64 shift_divisor, i64 t);

// Lazy subband signal: axis selects the filtered dimension (d-D aware).
std::shared_ptr<SignalOracle> convolved_oracle(std::shared_ptr<const SignalOracle> s,
                                               BoxCarFilter f, double modulation_j,
                                               i64 shift_divisor, int axis = 0);

// Working signal for group testing: G(tau) = S(q*tau mod N) e^{-2 pi i mu tau / N}
// with integer dilation q and real modulation frequency mu.
std::shared_ptr<SignalOracle> dilated_modulated_oracle(std::shared_ptr<const SignalOracle> s,
                                                       i64 q, double mu);

enum class SamplingMode { independent, arithmetic_progression };

// Independent uniform draws, or count/len unit-step progressions with uniform
// random starts, indices mod n.
std::vector<i64> sample_positions(SamplingMode mode, i64 count, i64 n, i64 progression_len,
                                  RngStream& rng);

}  // namespace ralsfa
