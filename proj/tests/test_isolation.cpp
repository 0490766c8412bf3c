#include "doctest.h"
#include "ralsfa/dense.hpp"
#include "ralsfa/isolation.hpp"

#include <cmath>

using namespace ralsfa;

namespace {

// fraction of the energy carried by the largest spectral line
double purity(const SignalOracle& s) {
    auto sp = dft_naive(materialize(s), s.length(), s.dim());
    double total = 0.0, best = 0.0;
    for (const cplx& c : sp.coef) {
        const double e = std::norm(c);
        total += e;
        best = std::max(best, e);
    }
    return total > 0.0 ? best / total : 0.0;
}

}  // namespace

TEST_CASE("parameter policies") {
    auto p = IsolationParams::defaults(0.05, 8);
    CHECK(p.repetitions == 5);  // ceil(log2 20)
    CHECK(p.eta == doctest::Approx(1.0 / 32.0));

    CHECK(choose_filter_width(1) == 1);
    CHECK(choose_filter_width(8) == 1);
    CHECK(choose_filter_width(9) == 2);
    CHECK(choose_filter_width(64) == 2);
    CHECK(choose_filter_width(256) == 4);   // ceil(log2(256)/2)
    CHECK(choose_filter_width(1024) == 5);  // ceil(10/2)

    // k >= 12.25 (1-eta) pi^2 / eta at eta = 1/4
    CHECK(lemma_filter_width(0.25) == 363);

    IsolationParams bad;
    bad.eta = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("a single pure mode survives every permutation fully pure") {
    GeneratedSignalSpec spec;
    spec.n = 101;
    spec.modes = {{{37}, {1.0, 0.0}}};
    auto s = generate_signal(spec);
    RngStream rng(17);
    IsolationParams p;
    p.repetitions = 6;
    for (const auto& iso : isolate(s, p, rng)) CHECK(purity(*iso.oracle) > 0.999);
}

TEST_CASE("two close modes: 98% purity rate matches exact enumeration") {
    // Ground truth by exhaustive enumeration of every (theta, sigma) pair:
    // for S = phi_3 + phi_4 at N = 101 with k = 1, exactly 1540 of the 10100
    // permutations leave one mode carrying >= 98% of the filtered energy.
    const i64 n = 101;
    int exact_pure = 0;
    for (i64 theta = 0; theta < n; ++theta)
        for (i64 sigma = 1; sigma < n; ++sigma) {
            FrequencyPermutation1D perm{theta, sigma, mod_inverse(sigma, n)};
            const double e1 = std::pow(dirichlet_response(1, perm.forward_freq(3, n), n), 2);
            const double e2 = std::pow(dirichlet_response(1, perm.forward_freq(4, n), n), 2);
            if (std::max(e1, e2) >= 0.98 * (e1 + e2)) ++exact_pure;
        }
    CHECK(exact_pure == 1540);  // 15.25% of all permutations

    // the sampled pipeline agrees with the enumeration (binomial slack)
    GeneratedSignalSpec spec;
    spec.n = n;
    spec.modes = {{{3}, {1.0, 0.0}}, {{4}, {1.0, 0.0}}};
    auto s = generate_signal(spec);
    IsolationParams p;
    p.k = 1;
    p.repetitions = 8;
    int pure = 0, total = 0;
    for (int batch = 0; batch < 100; ++batch) {
        RngStream rng(500 + static_cast<u64>(batch));
        for (const auto& iso : isolate(s, p, rng)) {
            ++total;
            if (purity(*iso.oracle) >= 0.98) ++pure;
        }
    }
    CHECK(total == 800);
    const double frac = static_cast<double>(pure) / static_cast<double>(total);
    CHECK(frac > 0.1025);  // 0.1525 - 4 sigma
    CHECK(frac < 0.2025);  // 0.1525 + 4 sigma
}

TEST_CASE("inverse map recovers a planted mode across random permutations") {
    const i64 n = 101;
    for (int trial = 0; trial < 100; ++trial) {
        RngStream rng(900 + static_cast<u64>(trial));
        const i64 w = rng.uniform_index(n);
        GeneratedSignalSpec spec;
        spec.n = n;
        spec.modes = {{{w}, {1.0, 0.0}}};
        auto s = generate_signal(spec);
        IsolationParams p;
        p.repetitions = 1;
        auto batch = isolate(s, p, rng);
        REQUIRE(batch.size() == 1);
        // locate the only spectral line of the filtered signal
        auto sp = dft_naive(materialize(*batch[0].oracle), n, 1);
        i64 best = 0;
        for (i64 f = 1; f < n; ++f)
            if (std::norm(sp.at1(f)) > std::norm(sp.at1(best))) best = f;
        CHECK(batch[0].original_freq(best, n) == w);
    }
}

TEST_CASE("isolated oracle costs 2k+1 parent samples per evaluation") {
    GeneratedSignalSpec spec;
    spec.n = 64;
    spec.modes = {{{5}, {1.0, 0.0}}};
    auto s = generate_signal(spec);
    RngStream rng(3);
    IsolationParams p;
    p.k = 2;
    p.repetitions = 1;
    auto batch = isolate(s, p, rng);
    const u64 c0 = s->sample_count();
    (void)batch[0].oracle->sample1(9);
    CHECK(s->sample_count() == c0 + 5);
}
