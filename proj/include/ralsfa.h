/* C interface to the sparse Fourier recovery library.
 *
 * All functions return a ralsfa_status; on failure a thread-local message is
 * available via ralsfa_last_error(). Handles are opaque and must be released
 * with their matching _destroy function. Strings returned through out-params
 * are heap-allocated and must be released with ralsfa_string_free.
 */
#ifndef RALSFA_H
#define RALSFA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RALSFA_API __declspec(dllexport)
#else
#define RALSFA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ralsfa_status {
    RALSFA_OK = 0,
    RALSFA_EINVAL = 1,   /* bad argument or parameter set */
    RALSFA_EIO = 2,      /* file or parse failure */
    RALSFA_ERANGE = 3,   /* size/index out of supported range */
    RALSFA_EINTERNAL = 4 /* unexpected library failure */
} ralsfa_status;

RALSFA_API const char* ralsfa_last_error(void);

RALSFA_API void ralsfa_string_free(char* s);

/* ---- signals ---------------------------------------------------------- */

typedef struct ralsfa_signal ralsfa_signal;

/* spec_json: {"n":..,"d":..,"kind":"superposition"|"decay_spectrum",
 *             "modes":[{"freq":[..],"re":..,"im":..}],
 *             "noise_sigma":..,"seed":..} */
RALSFA_API ralsfa_status ralsfa_signal_from_spec_json(const char* spec_json,
                                                      ralsfa_signal** out);

/* Binary dump with magic "RLSF" (dense row-major complex samples). */
RALSFA_API ralsfa_status ralsfa_signal_from_file(const char* path, ralsfa_signal** out);

RALSFA_API void ralsfa_signal_destroy(ralsfa_signal* s);

RALSFA_API ralsfa_status ralsfa_signal_length(const ralsfa_signal* s, int64_t* out);
RALSFA_API ralsfa_status ralsfa_signal_dim(const ralsfa_signal* s, int32_t* out);
RALSFA_API ralsfa_status ralsfa_signal_sample(const ralsfa_signal* s, const int64_t* t,
                                              int32_t d, double* re, double* im);
RALSFA_API uint64_t ralsfa_signal_sample_count(const ralsfa_signal* s);
RALSFA_API double ralsfa_signal_sampling_seconds(const ralsfa_signal* s);

/* Materializes the signal and writes the "RLSF" dump. */
RALSFA_API ralsfa_status ralsfa_signal_write_file(const ralsfa_signal* s, const char* path);

/* ---- recovery --------------------------------------------------------- */

typedef struct ralsfa_params {
    int64_t b;
    double epsilon;
    double delta;
    double iota;
    double noise_sigma;
    double energy_bound;        /* 0: estimate from the signal */
    double significance_cutoff; /* 0: sigma/6 noisy, epsilon*sqrt(M) clean */
    double acceptance_margin;
    double noisy_confirm_std; /* 0: 4% of the residual scale */
    double noisy_refine_std;  /* 0: 1% of the residual scale */
    int64_t max_iterations; /* 0: formula */
    int64_t iteration_cap;
    int64_t max_modes; /* 0: unlimited */
    int32_t k_isolation;        /* 0: from b */
    int32_t isolation_repetitions; /* 0: from delta */
    int32_t k_msb;
    int32_t use_proven_preset; /* 0: practical estimator preset */
    int64_t msb_energy_r;
    int64_t neighbor_radius;
    int64_t max_samples_per_mean;
} ralsfa_params;

/* Fills in the library defaults; call before overriding fields. */
RALSFA_API void ralsfa_params_init(ralsfa_params* p);

typedef struct ralsfa_report ralsfa_report;

/* Runs 1-D or d-D recovery depending on the signal's dimension. */
RALSFA_API ralsfa_status ralsfa_recover(const ralsfa_signal* s, const ralsfa_params* p,
                                        uint64_t seed, ralsfa_report** out);

RALSFA_API void ralsfa_report_destroy(ralsfa_report* r);

RALSFA_API ralsfa_status ralsfa_report_stats(const ralsfa_report* r, int64_t* iterations,
                                             uint64_t* samples, double* wall_total_s,
                                             double* wall_excl_sampling_s,
                                             double* residual_energy, int32_t* exhausted);
RALSFA_API ralsfa_status ralsfa_report_mode_count(const ralsfa_report* r, int64_t* out);
RALSFA_API ralsfa_status ralsfa_report_mode(const ralsfa_report* r, int64_t idx,
                                            int64_t* freq, int32_t d, double* re, double* im);
RALSFA_API ralsfa_status ralsfa_report_to_json(const ralsfa_report* r, char** out);

/* ---- dense baseline --------------------------------------------------- */

typedef struct ralsfa_spectrum ralsfa_spectrum;

/* fast != 0 uses the FFT path; otherwise the naive DFT (size-capped). */
RALSFA_API ralsfa_status ralsfa_dense_spectrum(const ralsfa_signal* s, int32_t fast,
                                               ralsfa_spectrum** out);

RALSFA_API void ralsfa_spectrum_destroy(ralsfa_spectrum* sp);

RALSFA_API ralsfa_status ralsfa_spectrum_energy(const ralsfa_spectrum* sp, double* out);
RALSFA_API ralsfa_status ralsfa_spectrum_at(const ralsfa_spectrum* sp, const int64_t* freq,
                                            int32_t d, double* re, double* im);
/* Largest-magnitude coefficients, sorted descending. freq has room for
 * count*d entries; *count is clamped to the spectrum size on return. */
RALSFA_API ralsfa_status ralsfa_spectrum_top_modes(const ralsfa_spectrum* sp, int64_t* count,
                                                   int64_t* freq, double* re, double* im);

#ifdef __cplusplus
}
#endif

#endif /* RALSFA_H */
