#pragma once

#include <vector>

#include "ralsfa/transform.hpp"

namespace ralsfa {

// Median-of-means coefficient estimator: K groups of L-sample means, median
// taken component-wise on real and imaginary parts. K is forced odd so the
// median is a data point.
struct CoefficientEstimatorParams {
    double epsilon_hat = 0.0;  // relative tolerance (proven preset only)
    double delta_hat = 0.0;
    i64 samples_per_mean = 10;   // L
    i64 means_per_median = 5;    // K, odd
    int refinement_steps = 3;    // n
    SamplingMode sampling_mode = SamplingMode::independent;
    i64 progression_len = 8;
    bool proven = false;

    // 10 samples per mean, 5 means per median, 3 steps: 150 samples/coefficient.
    static CoefficientEstimatorParams practical();
    // L = ceil(8/eps^2), K = ceil(2*log2(1/delta)) rounded up to odd.
    static CoefficientEstimatorParams theoretical(double epsilon_hat, double delta_hat);

    i64 samples_per_estimate() const { return samples_per_mean * means_per_median; }
    void validate() const;
};

cplx estimate_coefficient(const SignalOracle& s, std::span<const i64> omega,
                          const CoefficientEstimatorParams& p, RngStream& rng);
cplx estimate_coefficient(const SignalOracle& s, i64 omega,
                          const CoefficientEstimatorParams& p, RngStream& rng);

// Coarse-to-fine multi-step estimation: each round estimates the residual's
// coefficients at the given frequencies and accumulates the corrections into
// the representation. Fails fast when q*eps^2 >= 1 (divergent recursion).
void refine_in_place(std::shared_ptr<const SignalOracle> s, SparseRepresentation& rep,
                     const CoefficientEstimatorParams& p, RngStream& rng);

std::vector<cplx> refine_coefficients(std::shared_ptr<const SignalOracle> s,
                                      const std::vector<std::vector<i64>>& omegas,
                                      const CoefficientEstimatorParams& p, RngStream& rng);

// 60th-percentile energy estimator.
struct EnergyEstimatorParams {
    i64 r = 20;

    // floor(12.5 ln(1/delta)) rounded down to a multiple of 5, at least 5.
    static EnergyEstimatorParams from_delta(double delta);
    void validate() const;
};

// N^d times the floor(3r/5)-th (1-indexed) order statistic of |S(t_i)|^2 over
// r independent uniform draws.
double estimate_energy(const SignalOracle& s, const EnergyEstimatorParams& p, RngStream& rng);

// Process-wide tally of estimate_energy invocations (scaling assertions).
u64 energy_estimate_count();
void reset_energy_estimate_count();

}  // namespace ralsfa
