#include "ralsfa.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "ralsfa/dense.hpp"
#include "ralsfa/io.hpp"
#include "ralsfa/recovery.hpp"
#include "ralsfa/signal.hpp"

namespace {

thread_local std::string g_last_error;

ralsfa_status fail(ralsfa_status code, const char* msg) {
    g_last_error = msg;
    return code;
}

ralsfa_status fail(ralsfa_status code, const std::exception& e) {
    g_last_error = e.what();
    return code;
}

// Maps C++ failures onto the C status codes; bad_alloc/unknown -> EINTERNAL.
template <typename Fn>
ralsfa_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(RALSFA_EINVAL, e);
    } catch (const std::out_of_range& e) {
        return fail(RALSFA_ERANGE, e);
    } catch (const std::length_error& e) {
        return fail(RALSFA_ERANGE, e);
    } catch (const std::ios_base::failure& e) {
        return fail(RALSFA_EIO, e);
    } catch (const std::runtime_error& e) {
        return fail(RALSFA_EIO, e);
    } catch (const std::exception& e) {
        return fail(RALSFA_EINTERNAL, e);
    } catch (...) {
        return fail(RALSFA_EINTERNAL, "unknown failure");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct ralsfa_signal {
    std::shared_ptr<ralsfa::SignalOracle> oracle;
};

struct ralsfa_report {
    ralsfa::RecoveryReport report;
};

struct ralsfa_spectrum {
    ralsfa::DenseSpectrum spectrum;
};

extern "C" {

const char* ralsfa_last_error(void) { return g_last_error.c_str(); }

void ralsfa_string_free(char* s) { delete[] s; }

ralsfa_status ralsfa_signal_from_spec_json(const char* spec_json, ralsfa_signal** out) {
    if (!spec_json || !out) return fail(RALSFA_EINVAL, "null argument");
    return guarded([&] {
        auto spec = ralsfa::spec_from_json(spec_json);
        *out = new ralsfa_signal{ralsfa::generate_signal(spec)};
        return RALSFA_OK;
    });
}

ralsfa_status ralsfa_signal_from_file(const char* path, ralsfa_signal** out) {
    if (!path || !out) return fail(RALSFA_EINVAL, "null argument");
    return guarded([&] {
        ralsfa::DenseSignal sig = ralsfa::read_rlsf_file(path);
        *out = new ralsfa_signal{
            std::make_shared<ralsfa::DenseOracle>(std::move(sig.data), sig.n, sig.d)};
        return RALSFA_OK;
    });
}

void ralsfa_signal_destroy(ralsfa_signal* s) { delete s; }

ralsfa_status ralsfa_signal_length(const ralsfa_signal* s, int64_t* out) {
    if (!s || !out) return fail(RALSFA_EINVAL, "null argument");
    *out = s->oracle->length();
    return RALSFA_OK;
}

ralsfa_status ralsfa_signal_dim(const ralsfa_signal* s, int32_t* out) {
    if (!s || !out) return fail(RALSFA_EINVAL, "null argument");
    *out = s->oracle->dim();
    return RALSFA_OK;
}

ralsfa_status ralsfa_signal_sample(const ralsfa_signal* s, const int64_t* t, int32_t d,
                                   double* re, double* im) {
    if (!s || !t || !re || !im) return fail(RALSFA_EINVAL, "null argument");
    if (d != s->oracle->dim()) return fail(RALSFA_EINVAL, "dimension mismatch");
    return guarded([&] {
        const ralsfa::cplx v = s->oracle->sample({t, static_cast<std::size_t>(d)});
        *re = v.real();
        *im = v.imag();
        return RALSFA_OK;
    });
}

uint64_t ralsfa_signal_sample_count(const ralsfa_signal* s) {
    return s ? s->oracle->sample_count() : 0;
}

double ralsfa_signal_sampling_seconds(const ralsfa_signal* s) {
    return s ? s->oracle->sampling_seconds() : 0.0;
}

ralsfa_status ralsfa_signal_write_file(const ralsfa_signal* s, const char* path) {
    if (!s || !path) return fail(RALSFA_EINVAL, "null argument");
    return guarded([&] {
        ralsfa::DenseSignal sig{ralsfa::materialize(*s->oracle), s->oracle->length(),
                                s->oracle->dim()};
        ralsfa::write_rlsf_file(path, sig);
        return RALSFA_OK;
    });
}

void ralsfa_params_init(ralsfa_params* p) {
    if (!p) return;
    const ralsfa::RecoveryParams d;
    *p = ralsfa_params{};
    p->b = d.b;
    p->epsilon = d.epsilon;
    p->delta = d.delta;
    p->iota = d.iota;
    p->noise_sigma = d.noise_sigma;
    p->energy_bound = d.energy_bound;
    p->significance_cutoff = d.significance_cutoff;
    p->acceptance_margin = d.acceptance_margin;
    p->noisy_confirm_std = d.noisy_confirm_std;
    p->noisy_refine_std = d.noisy_refine_std;
    p->max_iterations = d.max_iterations;
    p->iteration_cap = d.iteration_cap;
    p->max_modes = d.max_modes;
    p->k_isolation = d.k_isolation;
    p->isolation_repetitions = d.isolation_repetitions;
    p->k_msb = d.k_msb;
    p->use_proven_preset = 0;
    p->msb_energy_r = d.msb_energy_r;
    p->neighbor_radius = d.neighbor_radius;
    p->max_samples_per_mean = d.max_samples_per_mean;
}

namespace {

ralsfa::RecoveryParams to_cpp(const ralsfa_params& p) {
    ralsfa::RecoveryParams out;
    out.b = p.b;
    out.epsilon = p.epsilon;
    out.delta = p.delta;
    out.iota = p.iota;
    out.noise_sigma = p.noise_sigma;
    out.energy_bound = p.energy_bound;
    out.significance_cutoff = p.significance_cutoff;
    out.acceptance_margin = p.acceptance_margin;
    out.noisy_confirm_std = p.noisy_confirm_std;
    out.noisy_refine_std = p.noisy_refine_std;
    out.max_iterations = p.max_iterations;
    out.iteration_cap = p.iteration_cap;
    out.max_modes = p.max_modes;
    out.k_isolation = p.k_isolation;
    out.isolation_repetitions = p.isolation_repetitions;
    out.k_msb = p.k_msb;
    out.msb_energy_r = p.msb_energy_r;
    out.neighbor_radius = p.neighbor_radius;
    out.max_samples_per_mean = p.max_samples_per_mean;
    if (p.use_proven_preset)
        out.est = ralsfa::CoefficientEstimatorParams::theoretical(p.epsilon, p.delta);
    return out;
}

}  // namespace

ralsfa_status ralsfa_recover(const ralsfa_signal* s, const ralsfa_params* p, uint64_t seed,
                             ralsfa_report** out) {
    if (!s || !p || !out) return fail(RALSFA_EINVAL, "null argument");
    return guarded([&] {
        const ralsfa::RecoveryParams cp = to_cpp(*p);
        ralsfa::RecoveryReport rpt = s->oracle->dim() == 1
                                         ? ralsfa::recover(s->oracle, cp, seed)
                                         : ralsfa::recover_nd(s->oracle, cp, seed);
        *out = new ralsfa_report{std::move(rpt)};
        return RALSFA_OK;
    });
}

void ralsfa_report_destroy(ralsfa_report* r) { delete r; }

ralsfa_status ralsfa_report_stats(const ralsfa_report* r, int64_t* iterations, uint64_t* samples,
                                  double* wall_total_s, double* wall_excl_sampling_s,
                                  double* residual_energy, int32_t* exhausted) {
    if (!r) return fail(RALSFA_EINVAL, "null argument");
    if (iterations) *iterations = r->report.iterations_used;
    if (samples) *samples = r->report.samples_used;
    if (wall_total_s) *wall_total_s = r->report.wall_total_s;
    if (wall_excl_sampling_s) *wall_excl_sampling_s = r->report.wall_excl_sampling_s;
    if (residual_energy) *residual_energy = r->report.residual_energy_estimate;
    if (exhausted) *exhausted = r->report.exhausted ? 1 : 0;
    return RALSFA_OK;
}

ralsfa_status ralsfa_report_mode_count(const ralsfa_report* r, int64_t* out) {
    if (!r || !out) return fail(RALSFA_EINVAL, "null argument");
    *out = static_cast<int64_t>(r->report.representation.size());
    return RALSFA_OK;
}

ralsfa_status ralsfa_report_mode(const ralsfa_report* r, int64_t idx, int64_t* freq, int32_t d,
                                 double* re, double* im) {
    if (!r || !freq || !re || !im) return fail(RALSFA_EINVAL, "null argument");
    const auto& modes = r->report.representation.modes();
    if (idx < 0 || static_cast<std::size_t>(idx) >= modes.size())
        return fail(RALSFA_ERANGE, "mode index out of range");
    const ralsfa::Mode& m = modes[static_cast<std::size_t>(idx)];
    if (d != static_cast<int32_t>(m.freq.size())) return fail(RALSFA_EINVAL, "dimension mismatch");
    for (int32_t i = 0; i < d; ++i) freq[i] = m.freq[static_cast<std::size_t>(i)];
    *re = m.coef.real();
    *im = m.coef.imag();
    return RALSFA_OK;
}

ralsfa_status ralsfa_report_to_json(const ralsfa_report* r, char** out) {
    if (!r || !out) return fail(RALSFA_EINVAL, "null argument");
    return guarded([&] {
        *out = dup_string(ralsfa::report_to_json(r->report));
        return RALSFA_OK;
    });
}

ralsfa_status ralsfa_dense_spectrum(const ralsfa_signal* s, int32_t fast, ralsfa_spectrum** out) {
    if (!s || !out) return fail(RALSFA_EINVAL, "null argument");
    return guarded([&] {
        std::vector<ralsfa::cplx> dense = ralsfa::materialize(*s->oracle);
        ralsfa::DenseSpectrum sp =
            fast ? ralsfa::fft(dense, s->oracle->length(), s->oracle->dim())
                 : ralsfa::dft_naive(dense, s->oracle->length(), s->oracle->dim());
        *out = new ralsfa_spectrum{std::move(sp)};
        return RALSFA_OK;
    });
}

void ralsfa_spectrum_destroy(ralsfa_spectrum* sp) { delete sp; }

ralsfa_status ralsfa_spectrum_energy(const ralsfa_spectrum* sp, double* out) {
    if (!sp || !out) return fail(RALSFA_EINVAL, "null argument");
    *out = sp->spectrum.energy();
    return RALSFA_OK;
}

ralsfa_status ralsfa_spectrum_at(const ralsfa_spectrum* sp, const int64_t* freq, int32_t d,
                                 double* re, double* im) {
    if (!sp || !freq || !re || !im) return fail(RALSFA_EINVAL, "null argument");
    if (d != sp->spectrum.d) return fail(RALSFA_EINVAL, "dimension mismatch");
    return guarded([&] {
        std::vector<ralsfa::i64> w(freq, freq + d);
        for (auto& c : w) c = ralsfa::mod_n(c, sp->spectrum.n);
        const ralsfa::cplx v = sp->spectrum.at(w);
        *re = v.real();
        *im = v.imag();
        return RALSFA_OK;
    });
}

ralsfa_status ralsfa_spectrum_top_modes(const ralsfa_spectrum* sp, int64_t* count, int64_t* freq,
                                        double* re, double* im) {
    if (!sp || !count || !freq || !re || !im) return fail(RALSFA_EINVAL, "null argument");
    if (*count < 0) return fail(RALSFA_EINVAL, "negative count");
    return guarded([&] {
        const ralsfa::SparseRepresentation top = ralsfa::top_modes(sp->spectrum, *count);
        const auto& modes = top.modes();
        *count = static_cast<int64_t>(modes.size());
        const int d = sp->spectrum.d;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (int j = 0; j < d; ++j)
                freq[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
                    modes[i].freq[static_cast<std::size_t>(j)];
            re[i] = modes[i].coef.real();
            im[i] = modes[i].coef.imag();
        }
        return RALSFA_OK;
    });
}

}  // extern "C"
