#include "ralsfa/recovery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "recovery_driver.hpp"

namespace ralsfa {

void RecoveryParams::validate() const {
    if (b < 1) throw std::invalid_argument("sparsity target must be >= 1");
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
    if (iota <= 0.0 || iota >= 1.0) throw std::invalid_argument("iota must lie in (0,1)");
    if (noise_sigma < 0.0 || energy_bound < 0.0 || significance_cutoff < 0.0)
        throw std::invalid_argument("negative noise/energy parameter");
    if (acceptance_margin < 0.0 || noisy_confirm_std < 0.0 || noisy_refine_std < 0.0 ||
        max_samples_per_mean < 1)
        throw std::invalid_argument("bad acceptance/estimation parameters");
    if (max_iterations < 0 || iteration_cap < 1 || max_modes < 0 || neighbor_radius < 0)
        throw std::invalid_argument("bad iteration/bookkeeping limits");
    if (k_isolation < 0 || isolation_repetitions < 0 || k_msb < 1 || msb_energy_r < 5)
        throw std::invalid_argument("bad filter/bandwidth parameters");
    est.validate();
}

i64 RecoveryParams::effective_max_iterations(i64 n) const {
    if (max_iterations > 0) return max_iterations;
    const double t = static_cast<double>(b) * std::log2(static_cast<double>(n)) *
                     std::log2(1.0 / delta) / (epsilon * epsilon);
    i64 formula = static_cast<i64>(std::ceil(t));
    if (formula < 1) formula = 1;
    return std::min(formula, iteration_cap);
}

int RecoveryParams::effective_k_isolation() const {
    return k_isolation > 0 ? k_isolation : choose_filter_width(b);
}

int RecoveryParams::effective_repetitions() const {
    if (isolation_repetitions > 0) return isolation_repetitions;
    int r = static_cast<int>(std::ceil(std::log2(1.0 / delta)));
    return r < 1 ? 1 : r;
}

namespace detail {

namespace {

// Candidate plus its axis-aligned +-1 neighbors, best coefficient wins.
std::pair<std::vector<i64>, cplx> confirm_candidate(const SignalOracle& resid,
                                                    const std::vector<i64>& cand, i64 radius,
                                                    const CoefficientEstimatorParams& est,
                                                    RngStream& rng) {
    const i64 n = resid.length();
    std::vector<std::vector<i64>> probes{cand};
    for (std::size_t ax = 0; ax < cand.size(); ++ax) {
        for (i64 off = -radius; off <= radius; ++off) {
            if (off == 0) continue;
            std::vector<i64> nb = cand;
            nb[ax] = mod_n(nb[ax] + off, n);
            probes.push_back(std::move(nb));
        }
    }
    std::vector<i64> best;
    cplx best_coef{0.0, 0.0};
    double best_mag = -1.0;
    for (const auto& w : probes) {
        const cplx c = estimate_coefficient(resid, w, est, rng);
        const double mag = std::abs(c);
        if (mag > best_mag || (mag == best_mag && w < best)) {
            best_mag = mag;
            best = w;
            best_coef = c;
        }
    }
    return {best, best_coef};
}

// Sample count so the median-of-means estimate of a coefficient of a signal
// with energy `energy` has std roughly `target_std` (1.6 covers the median's
// variance inflation over the plain mean).
CoefficientEstimatorParams scaled_estimator(const CoefficientEstimatorParams& base, double energy,
                                            double target_std, i64 cap) {
    CoefficientEstimatorParams p = base;
    if (target_std > 0.0 && energy > 0.0) {
        const double need = 1.6 * energy / (target_std * target_std * static_cast<double>(p.means_per_median));
        const i64 l = static_cast<i64>(std::ceil(need));
        p.samples_per_mean = std::clamp(l, base.samples_per_mean, cap);
    }
    return p;
}

double estimator_std(const CoefficientEstimatorParams& p, double energy) {
    return std::sqrt(1.6 * std::max(energy, 0.0) /
                     static_cast<double>(p.samples_per_mean * p.means_per_median));
}

}  // namespace

RecoveryReport run_greedy(std::shared_ptr<const SignalOracle> s, const RecoveryParams& p,
                          u64 seed, const Locator& locate) {
    p.validate();
    const i64 n = s->length();
    const int d = s->dim();
    const auto wall_start = std::chrono::steady_clock::now();
    const u64 samples_start = s->sample_count();
    const double sampling_start = s->sampling_seconds();

    RecoveryReport rpt;
    rpt.representation = SparseRepresentation(n, d);
    SparseRepresentation& rep = rpt.representation;

    const i64 t_max = p.effective_max_iterations(n);
    const EnergyEstimatorParams eparams = EnergyEstimatorParams::from_delta(p.delta);
    double cutoff = p.significance_cutoff;
    double energy_bound = p.energy_bound;
    bool stopped = false;
    i64 boost = 1;  // doubles whenever nothing clears the margin

    for (i64 it = 0; it < t_max; ++it) {
        auto resid = residual_oracle(s, rep);
        RngStream stop_rng = RngStream::derive(seed, static_cast<u64>(it), 1);
        const double resid_e = estimate_energy(*resid, eparams, stop_rng);

        if (energy_bound <= 0.0) energy_bound = resid_e;  // first look doubles as M
        if (cutoff <= 0.0)
            cutoff = p.noise_sigma > 0.0 ? p.noise_sigma / 6.0
                                         : p.epsilon * std::sqrt(std::max(energy_bound, 0.0));

        rpt.trace.push_back({resid_e, {}});
        if (resid_e <= p.iota * rep.energy()) {
            rpt.iterations_used = it;
            stopped = true;
            break;
        }

        auto cands = locate(resid, seed, it);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        CoefficientEstimatorParams est_loop = p.est;
        if (p.noise_sigma > 0.0) {
            // default: std at 4% of the residual scale, so each accepted mode
            // perturbs the residual by well under a percent of its energy
            const double target = p.noisy_confirm_std > 0.0
                                      ? p.noisy_confirm_std
                                      : 0.04 * std::sqrt(std::max(resid_e, 0.0));
            est_loop = scaled_estimator(p.est, resid_e, target, p.max_samples_per_mean);
        }
        const bool at_cap = est_loop.samples_per_mean * boost >= p.max_samples_per_mean;
        est_loop.samples_per_mean =
            std::min(est_loop.samples_per_mean * boost, p.max_samples_per_mean);
        const double accept_thr =
            std::max(cutoff, p.acceptance_margin * estimator_std(est_loop, resid_e));

        RngStream confirm_rng = RngStream::derive(seed, static_cast<u64>(it), 2);
        std::set<std::vector<i64>> handled;
        bool accepted_any = false;
        for (const auto& cand : cands) {
            auto [freq, coef] = confirm_candidate(*resid, cand, p.neighbor_radius, est_loop, confirm_rng);
            if (!handled.insert(freq).second) continue;
            const bool accepted = std::abs(coef) >= accept_thr;
            rpt.trace.back().candidates.push_back({freq, coef, accepted});
            if (accepted) {
                rep.add(freq, coef);
                accepted_any = true;
            }
        }
        if (p.max_modes > 0 && static_cast<i64>(rep.size()) > p.max_modes)
            rep.keep_largest(p.max_modes);

        // Once the fixed cutoff dominates the margin, more samples cannot
        // change any accept decision; two no-accept rounds there (or at the
        // sample cap) mean the loop has converged to its floor.
        const bool margin_moot =
            p.acceptance_margin * estimator_std(est_loop, resid_e) <= cutoff;
        if (accepted_any) {
            boost = 1;
        } else if (boost > 1 && (at_cap || margin_moot)) {
            rpt.iterations_used = it + 1;
            stopped = true;
            break;
        } else {
            boost *= 2;
        }
    }

    if (!stopped) {
        rpt.iterations_used = t_max;
        rpt.exhausted = true;
    }
    rpt.significance_cutoff_used = cutoff;

    if (rep.size() > 0) {
        CoefficientEstimatorParams est_fin = p.est;
        if (p.noise_sigma > 0.0 && !rpt.trace.empty()) {
            const double last_e = rpt.trace.back().residual_estimate;
            const double target = p.noisy_refine_std > 0.0
                                      ? p.noisy_refine_std
                                      : 0.01 * std::sqrt(std::max(last_e, 0.0));
            est_fin = scaled_estimator(p.est, last_e, target, p.max_samples_per_mean);
        }
        RngStream refine_rng = RngStream::derive(seed, 0x5ef1u, 9);
        refine_in_place(s, rep, est_fin, refine_rng);
        rep.prune_below(cutoff);
        rep.keep_largest(p.b);
    }
    rep.sort_by_frequency();

    RngStream final_rng = RngStream::derive(seed, 0x5ef1u, 10);
    rpt.residual_energy_estimate = estimate_energy(*residual_oracle(s, rep), eparams, final_rng);

    rpt.samples_used = s->sample_count() - samples_start;
    rpt.wall_total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    rpt.wall_excl_sampling_s = rpt.wall_total_s - (s->sampling_seconds() - sampling_start);
    return rpt;
}

}  // namespace detail

RecoveryReport recover(std::shared_ptr<const SignalOracle> s, const RecoveryParams& p, u64 seed) {
    if (s->dim() != 1) throw std::invalid_argument("recover expects a 1-D signal");
    auto locate = [&p](const std::shared_ptr<const SignalOracle>& resid, u64 sd,
                       i64 it) -> std::vector<std::vector<i64>> {
        const i64 n = resid->length();
        RngStream rng = RngStream::derive(sd, static_cast<u64>(it), 20);

        IsolationParams ip;
        ip.k = p.effective_k_isolation();
        ip.repetitions = p.effective_repetitions();
        ip.eta = 1.0 / (4.0 * static_cast<double>(p.b));

        MsbParams mp;
        mp.k = p.k_msb;
        mp.theory = p.msb_theory;
        mp.energy.r = p.msb_energy_r;

        std::vector<std::vector<i64>> cands;
        for (const IsolatedSignal& iso : isolate(resid, ip, rng)) {
            GroupTestResult gt = group_test(iso.oracle, mp, rng);
            if (gt.located) cands.push_back({iso.original_freq(*gt.located, n)});
        }
        return cands;
    };
    return detail::run_greedy(std::move(s), p, seed, locate);
}

}  // namespace ralsfa
