#include "doctest.h"
#include "ralsfa/dense.hpp"
#include "ralsfa/estimators.hpp"

#include <cmath>

using namespace ralsfa;

TEST_CASE("preset parameter formulas") {
    auto p = CoefficientEstimatorParams::practical();
    CHECK(p.samples_per_mean == 10);
    CHECK(p.means_per_median == 5);
    CHECK(p.refinement_steps == 3);
    CHECK(p.samples_per_estimate() == 50);
    CHECK(!p.proven);

    auto t = CoefficientEstimatorParams::theoretical(0.1, 0.05);
    CHECK(t.samples_per_mean == 800);  // ceil(8/eps^2)
    CHECK(t.means_per_median == 9);    // ceil(2 log2 20) = 9, already odd
    CHECK(t.proven);

    auto t2 = CoefficientEstimatorParams::theoretical(0.5, 0.25);
    CHECK(t2.samples_per_mean == 32);
    CHECK(t2.means_per_median == 5);  // ceil(4) = 4, bumped to odd

    CHECK_THROWS_AS(CoefficientEstimatorParams::theoretical(0.0, 0.05), std::invalid_argument);
}

TEST_CASE("even means_per_median is rejected") {
    CoefficientEstimatorParams p;
    p.means_per_median = 4;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("pure mode estimates are exact") {
    GeneratedSignalSpec spec;
    spec.n = 101;
    spec.modes = {{{5}, {3.0, 0.0}}};
    auto s = generate_signal(spec);
    RngStream rng(11);
    const cplx z = estimate_coefficient(*s, i64{5}, CoefficientEstimatorParams::practical(), rng);
    CHECK(std::abs(z - cplx{3.0, 0.0}) < 1e-12);

    // the constant mode on N=16: every sample contributes exactly 1
    GeneratedSignalSpec c16;
    c16.n = 16;
    c16.modes = {{{0}, {1.0, 0.0}}};
    auto s2 = generate_signal(c16);
    const cplx z2 = estimate_coefficient(*s2, i64{0}, CoefficientEstimatorParams::practical(), rng);
    CHECK(std::abs(z2 - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("theoretical concentration on a two-mode signal") {
    // |Z - S_hat(5)| <= eps ||S|| in >= 95 of 100 seeded trials
    GeneratedSignalSpec spec;
    spec.n = 64;
    spec.modes = {{{5}, {1.0, 0.0}}, {{9}, {1.0, 0.0}}};
    auto s = generate_signal(spec);
    auto sp = dft_naive(materialize(*s), 64, 1);
    const cplx truth = sp.at1(5);
    REQUIRE(std::abs(truth - cplx{1.0, 0.0}) < 1e-9);

    const auto p = CoefficientEstimatorParams::theoretical(0.1, 0.05);
    const double bound = 0.1 * std::sqrt(2.0);
    int ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        RngStream rng(1000 + static_cast<u64>(trial));
        const cplx z = estimate_coefficient(*s, i64{5}, p, rng);
        if (std::abs(z - truth) <= bound) ++ok;
    }
    CHECK(ok >= 95);
}

TEST_CASE("refinement on a single pure mode locks in the coefficient") {
    GeneratedSignalSpec spec;
    spec.n = 256;
    spec.modes = {{{77}, {2.0, -1.0}}};
    auto s = generate_signal(spec);
    RngStream rng(5);
    auto coefs = refine_coefficients(s, {{77}}, CoefficientEstimatorParams::practical(), rng);
    REQUIRE(coefs.size() == 1);
    CHECK(std::abs(coefs[0] - cplx{2.0, -1.0}) < 1e-10);
}

TEST_CASE("refinement rejects duplicates and divergent settings") {
    GeneratedSignalSpec spec;
    spec.n = 64;
    spec.modes = {{{5}, {1.0, 0.0}}};
    auto s = generate_signal(spec);
    RngStream rng(5);
    CHECK_THROWS_AS(
        refine_coefficients(s, {{5}, {5}}, CoefficientEstimatorParams::practical(), rng),
        std::invalid_argument);

    // q * eps^2 >= 1 must fail fast under the proven preset
    auto p = CoefficientEstimatorParams::theoretical(0.8, 0.1);
    CHECK_THROWS_AS(refine_coefficients(s, {{5}, {6}}, p, rng), std::invalid_argument);
}

TEST_CASE("energy estimator parameter policy") {
    CHECK(EnergyEstimatorParams::from_delta(0.05).r == 35);  // floor(12.5 ln 20) = 37 -> 35
    CHECK(EnergyEstimatorParams::from_delta(0.5).r == 5);
    CHECK(EnergyEstimatorParams::from_delta(1e-6).r == 170);  // floor(172.69) -> 170
    EnergyEstimatorParams p{4};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("energy of a pure mode is exact") {
    GeneratedSignalSpec spec;
    spec.n = 101;
    spec.modes = {{{13}, {3.0, 4.0}}};  // ||S||^2 = 25, |S(t)|^2 = 25/101 everywhere
    auto s = generate_signal(spec);
    RngStream rng(1);
    CHECK(estimate_energy(*s, EnergyEstimatorParams{20}, rng) == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("energy estimate call counter") {
    GeneratedSignalSpec spec;
    spec.n = 32;
    spec.modes = {{{1}, {1.0, 0.0}}};
    auto s = generate_signal(spec);
    RngStream rng(1);
    reset_energy_estimate_count();
    (void)estimate_energy(*s, EnergyEstimatorParams{5}, rng);
    (void)estimate_energy(*s, EnergyEstimatorParams{5}, rng);
    CHECK(energy_estimate_count() == 2);
}
