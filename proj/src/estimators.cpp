#include "ralsfa/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace ralsfa {

namespace {
std::atomic<u64> g_energy_calls{0};
}

u64 energy_estimate_count() { return g_energy_calls.load(std::memory_order_relaxed); }
void reset_energy_estimate_count() { g_energy_calls.store(0, std::memory_order_relaxed); }

CoefficientEstimatorParams CoefficientEstimatorParams::practical() {
    return {};
}

CoefficientEstimatorParams CoefficientEstimatorParams::theoretical(double epsilon_hat,
                                                                   double delta_hat) {
    if (epsilon_hat <= 0.0 || delta_hat <= 0.0 || delta_hat >= 1.0)
        throw std::invalid_argument("bad estimator tolerances");
    CoefficientEstimatorParams p;
    p.epsilon_hat = epsilon_hat;
    p.delta_hat = delta_hat;
    p.samples_per_mean = static_cast<i64>(std::ceil(8.0 / (epsilon_hat * epsilon_hat)));
    i64 k = static_cast<i64>(std::ceil(2.0 * std::log2(1.0 / delta_hat)));
    if (k < 1) k = 1;
    if (k % 2 == 0) ++k;
    p.means_per_median = k;
    p.proven = true;
    return p;
}

void CoefficientEstimatorParams::validate() const {
    if (samples_per_mean < 1 || means_per_median < 1 || refinement_steps < 1)
        throw std::invalid_argument("bad estimator parameters");
    if (means_per_median % 2 == 0) throw std::invalid_argument("means_per_median must be odd");
}

namespace {

double odd_median(std::vector<double>& v) {
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

}  // namespace

cplx estimate_coefficient(const SignalOracle& s, std::span<const i64> omega,
                          const CoefficientEstimatorParams& p, RngStream& rng) {
    p.validate();
    const i64 n = s.length();
    const int d = s.dim();
    if (static_cast<int>(omega.size()) != d) throw std::invalid_argument("frequency dimension mismatch");
    for (i64 f : omega)
        if (f < 0 || f >= n) throw std::out_of_range("frequency out of range");

    const double root_total = std::pow(static_cast<double>(n), 0.5 * d);
    std::vector<double> res, ims;
    res.reserve(static_cast<std::size_t>(p.means_per_median));
    ims.reserve(static_cast<std::size_t>(p.means_per_median));
    std::vector<i64> t(static_cast<std::size_t>(d));

    for (i64 g = 0; g < p.means_per_median; ++g) {
        cplx acc{0.0, 0.0};
        std::vector<i64> pos;
        if (d == 1)
            pos = sample_positions(p.sampling_mode, p.samples_per_mean, n, p.progression_len, rng);
        for (i64 j = 0; j < p.samples_per_mean; ++j) {
            i64 dot = 0;
            if (d == 1) {
                t[0] = pos[static_cast<std::size_t>(j)];
                dot = mod_n(omega[0] * t[0], n);
            } else {
                for (int ax = 0; ax < d; ++ax) {
                    t[static_cast<std::size_t>(ax)] = rng.uniform_index(n);
                    dot = mod_n(dot + omega[static_cast<std::size_t>(ax)] * t[static_cast<std::size_t>(ax)], n);
                }
            }
            // single-sample estimator X with E[X] = S_hat(omega)
            acc += root_total * s.sample(t) * unit_phase(-static_cast<double>(dot), static_cast<double>(n));
        }
        acc /= static_cast<double>(p.samples_per_mean);
        res.push_back(acc.real());
        ims.push_back(acc.imag());
    }
    return {odd_median(res), odd_median(ims)};
}

cplx estimate_coefficient(const SignalOracle& s, i64 omega,
                          const CoefficientEstimatorParams& p, RngStream& rng) {
    return estimate_coefficient(s, std::span<const i64>(&omega, 1), p, rng);
}

void refine_in_place(std::shared_ptr<const SignalOracle> s, SparseRepresentation& rep,
                     const CoefficientEstimatorParams& p, RngStream& rng) {
    p.validate();
    const i64 q = static_cast<i64>(rep.size());
    if (q == 0) return;
    if (p.proven && static_cast<double>(q) * p.epsilon_hat * p.epsilon_hat >= 1.0)
        throw std::invalid_argument("q * eps^2 >= 1: multi-step refinement diverges");

    std::vector<std::vector<i64>> omegas;
    omegas.reserve(static_cast<std::size_t>(q));
    for (const Mode& m : rep.modes()) omegas.push_back(m.freq);

    for (int round = 0; round < p.refinement_steps; ++round) {
        auto resid = residual_oracle(s, rep);
        std::vector<cplx> corrections(omegas.size());
        for (std::size_t i = 0; i < omegas.size(); ++i)
            corrections[i] = estimate_coefficient(*resid, omegas[i], p, rng);
        for (std::size_t i = 0; i < omegas.size(); ++i) rep.add(omegas[i], corrections[i]);
    }
}

std::vector<cplx> refine_coefficients(std::shared_ptr<const SignalOracle> s,
                                      const std::vector<std::vector<i64>>& omegas,
                                      const CoefficientEstimatorParams& p, RngStream& rng) {
    SparseRepresentation rep(s->length(), s->dim());
    for (const auto& w : omegas) rep.add(w, {0.0, 0.0});
    if (rep.size() != omegas.size()) throw std::invalid_argument("frequencies must be distinct");
    refine_in_place(std::move(s), rep, p, rng);
    std::vector<cplx> out;
    out.reserve(omegas.size());
    for (const auto& w : omegas) out.push_back(rep.find(w)->coef);
    return out;
}

EnergyEstimatorParams EnergyEstimatorParams::from_delta(double delta) {
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("bad delta");
    i64 r = static_cast<i64>(std::floor(12.5 * std::log(1.0 / delta)));
    r -= r % 5;
    if (r < 5) r = 5;
    return {r};
}

void EnergyEstimatorParams::validate() const {
    if (r < 5) throw std::invalid_argument("energy estimator needs r >= 5");
}

double estimate_energy(const SignalOracle& s, const EnergyEstimatorParams& p, RngStream& rng) {
    p.validate();
    g_energy_calls.fetch_add(1, std::memory_order_relaxed);
    const i64 n = s.length();
    const int d = s.dim();
    std::vector<double> mags;
    mags.reserve(static_cast<std::size_t>(p.r));
    std::vector<i64> t(static_cast<std::size_t>(d));
    for (i64 i = 0; i < p.r; ++i) {
        for (int ax = 0; ax < d; ++ax) t[static_cast<std::size_t>(ax)] = rng.uniform_index(n);
        mags.push_back(std::norm(s.sample(t)));
    }
    // floor(3r/5)-th sample, 1-indexed, in increasing order
    auto kth = mags.begin() + static_cast<std::ptrdiff_t>(3 * p.r / 5 - 1);
    std::nth_element(mags.begin(), kth, mags.end());
    return std::pow(static_cast<double>(n), static_cast<double>(d)) * *kth;
}

}  // namespace ralsfa
