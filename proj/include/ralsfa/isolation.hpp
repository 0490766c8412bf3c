#pragma once

#include <vector>

#include "ralsfa/transform.hpp"

namespace ralsfa {

// One batch member: F_j = H_k * (permuted S), plus the map taking a frequency
// located inside F_j back to a frequency of S.
struct IsolatedSignal {
    std::shared_ptr<SignalOracle> oracle;
    FrequencyPermutation1D permutation;

    i64 original_freq(i64 located, i64 n) const { return permutation.original_freq(located, n); }
};

struct IsolationParams {
    int k = 1;            // filter half-width; 3 taps by default
    int repetitions = 4;  // independent permutations per batch
    double eta = 0.25;    // significance threshold of the purity guarantee

    // repetitions = ceil(log2(1/delta)), eta = 1/(4b).
    static IsolationParams defaults(double delta, i64 b);
    void validate() const;
};

// Random dilation+modulation followed by a narrow box-car filter. Any mode
// holding at least an eta fraction of the energy has a constant chance per
// repetition of dominating the filtered output.
std::vector<IsolatedSignal> isolate(std::shared_ptr<const SignalOracle> s,
                                    const IsolationParams& p, RngStream& rng);

// Empirical filter width for a b-mode target: 3 taps up to b = 8, 5 taps up
// to b = 64, then ceil(log2(b)/2).
int choose_filter_width(i64 b);

// The width the purity guarantee actually asks for: k >= 12.25 (1-eta) pi^2 / eta.
// Far wider than what works well in practice; kept for bound-verification runs.
int lemma_filter_width(double eta);

}  // namespace ralsfa
