#pragma once

#include <optional>
#include <vector>

#include "ralsfa/signal.hpp"
#include "ralsfa/rng.hpp"

namespace ralsfa {

// Frequency map w -> A w + offset (mod N) with A invertible mod N.
struct AffinePermutationND {
    i64 n = 0;
    int d = 1;
    std::vector<i64> a;       // d x d, row-major
    std::vector<i64> offset;  // d
    std::vector<i64> a_inv;   // A * a_inv == I (mod N)

    std::vector<i64> forward_freq(std::span<const i64> w) const;
    std::vector<i64> original_freq(std::span<const i64> w_prime) const;
};

// Laplace-expansion determinant mod N; fine for the small d we care about.
i64 det_mod(const std::vector<i64>& a, int d, i64 n);

// Adjugate times det^{-1}; empty when det is not coprime to N.
std::optional<std::vector<i64>> matrix_inverse_mod(const std::vector<i64>& a, int d, i64 n);

AffinePermutationND random_affine_permutation(int d, i64 n, RngStream& rng, int max_retries = 64);

// P(t) = e^{2 pi i <offset,t>/N} S(A^T t mod N), so a mode at w in S shows up
// in P at A w + offset.
std::shared_ptr<SignalOracle> affine_permuted_oracle(std::shared_ptr<const SignalOracle> s,
                                                     AffinePermutationND perm);

// 1-D view of a d-D oracle: vary one axis, pin the others at base.
std::shared_ptr<SignalOracle> axis_slice_oracle(std::shared_ptr<const SignalOracle> s, int axis,
                                                std::vector<i64> base);

}  // namespace ralsfa
