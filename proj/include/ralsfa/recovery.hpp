#pragma once

#include <vector>

#include "ralsfa/estimators.hpp"
#include "ralsfa/group_testing.hpp"
#include "ralsfa/isolation.hpp"

namespace ralsfa {

struct RecoveryParams {
    i64 b = 8;                 // sparsity target
    double epsilon = 0.1;      // accuracy factor
    double delta = 0.05;       // failure probability
    double iota = 1e-4;        // stop when residual energy <= iota * ||R||^2
    double noise_sigma = 0.0;  // known/assumed noise level, 0 for clean
    double energy_bound = 0.0; // M; 0 means "estimate from the signal"

    // 0 picks sigma/6 for noisy signals, epsilon*sqrt(M) otherwise
    double significance_cutoff = 0.0;

    // A candidate must also clear margin * (coarse-estimator std), which
    // tracks the current residual energy; keeps junk out of the greedy loop
    // when the fixed cutoff sits below the estimator's own noise. 0 disables.
    double acceptance_margin = 3.0;

    // Noisy signals need tighter per-coefficient estimates, so the sample
    // count is raised until the estimator std reaches these absolute targets.
    // 0 keeps them relative to the residual scale (4% during the loop, 1%
    // for the final refinement); set explicitly when small coefficients must
    // clear the acceptance margin or be refined to a given accuracy.
    double noisy_confirm_std = 0.0;
    double noisy_refine_std = 0.0;
    i64 max_samples_per_mean = 200000;

    i64 max_iterations = 0;    // 0 -> B log2(N) log2(1/delta) / eps^2
    i64 iteration_cap = 1000;  // hard limit on the formula above
    i64 max_modes = 0;         // trim the working representation when it
                               // exceeds this many modes; 0 = unlimited

    int k_isolation = 0;            // 0 -> choose_filter_width(b)
    int isolation_repetitions = 0;  // 0 -> ceil(log2(1/delta))
    int k_msb = 1;
    bool msb_theory = false;
    i64 msb_energy_r = 20;
    i64 neighbor_radius = 1;

    CoefficientEstimatorParams est = CoefficientEstimatorParams::practical();

    void validate() const;
    i64 effective_max_iterations(i64 n) const;
    int effective_k_isolation() const;
    int effective_repetitions() const;
};

struct TraceMode {
    std::vector<i64> freq;
    cplx coef;
    bool accepted = false;
};

struct IterationTrace {
    double residual_estimate = 0.0;
    std::vector<TraceMode> candidates;
};

struct RecoveryReport {
    SparseRepresentation representation{1, 1};
    i64 iterations_used = 0;
    u64 samples_used = 0;
    double wall_total_s = 0.0;
    double wall_excl_sampling_s = 0.0;
    double residual_energy_estimate = 0.0;
    double significance_cutoff_used = 0.0;
    bool exhausted = false;  // iteration budget ran out before the stop test fired
    std::vector<IterationTrace> trace;
};

// Greedy pursuit: residual stop test, isolation, group testing, neighbor
// confirmation, coefficient estimation, residual update; multi-step
// refinement and pruning to b terms at the end. Deterministic given
// (signal, params, seed).
RecoveryReport recover(std::shared_ptr<const SignalOracle> s, const RecoveryParams& p, u64 seed);

// d-dimensional variant: random affine frequency permutations, isolation
// along one random axis, per-axis 1-D group testing. Delegates to recover
// when d = 1 so both entry points agree exactly.
RecoveryReport recover_nd(std::shared_ptr<const SignalOracle> s, const RecoveryParams& p, u64 seed);

}  // namespace ralsfa
