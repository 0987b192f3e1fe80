/*
 * ccsaa — chance-constraint sample-average approximation toolkit, C API.
 *
 * The library evaluates finite-sample infeasibility bounds for (robust)
 * sample-average approximations of chance constraints, generates drifting
 * sampling environments with verified Wasserstein variation budgets, and runs
 * reproducible Monte Carlo validation of every bound.
 *
 * Scalar kernels are exposed directly. Whole workflows (bound tables,
 * simulations, sweeps, sample sizing) run from JSON configuration documents
 * through ccsaa_run(), which returns an opaque result handle. Status codes
 * mirror the CLI exit codes.
 */

#ifndef CCSAA_H
#define CCSAA_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define CCSAA_API __attribute__((visibility("default")))
#else
#define CCSAA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccsaa_status {
    CCSAA_OK = 0,
    CCSAA_ERR_VALIDATION = 1,  /* bad arguments or configuration */
    CCSAA_ERR_BOUND_CHECK = 2, /* run completed but an empirical estimate
                                  exceeded a theoretical bound */
    CCSAA_ERR_INTERNAL = 3
} ccsaa_status;

/* Human-readable message for the most recent failure on this thread. */
CCSAA_API const char* ccsaa_last_error(void);

CCSAA_API const char* ccsaa_version(void);

/* ---- scalar kernels ---------------------------------------------------- */

/* Binomial lower-tail CDF at floor(z), N trials, success probability eps. */
CCSAA_API ccsaa_status ccsaa_binomial_cdf(double z, double eps, int64_t trials, double* out);

/* Poisson binomial lower-tail CDF at floor(z) for heterogeneous success
 * probabilities probs[0..count-1]. */
CCSAA_API ccsaa_status ccsaa_poisson_binomial_cdf(double z, const double* probs, size_t count,
                                                  double* out);

/* Hoeffding envelope exp(-2N(mean(p)-level)^2); fails with
 * CCSAA_ERR_VALIDATION when mean(p) <= level (bound inapplicable). */
CCSAA_API ccsaa_status ccsaa_hoeffding_tail(double level, const double* probs, size_t count,
                                            double* out);

/* Smallest N with N >= ln(card_x/delta) / (2 (eps-alpha-theta)^2). */
CCSAA_API ccsaa_status ccsaa_min_sample_size(uint64_t card_x, double delta, double eps,
                                             double alpha, double theta, int64_t* out);

/* Covering factor (L*D/gamma + 1)^n and its natural log. */
CCSAA_API ccsaa_status ccsaa_covering_factor(double lipschitz, double diameter, double gamma,
                                             int64_t n, double* out_value, double* out_log);

/* Infeasibility bounds; every bound fills raw / log10 / clamped-to-1 values
 * (any output pointer may be NULL). */
CCSAA_API ccsaa_status ccsaa_bound_finite(uint64_t card_x, double alpha, double eps,
                                          int64_t n_samples, double* raw, double* log10_raw,
                                          double* clamped);
CCSAA_API ccsaa_status ccsaa_bound_covering(double lipschitz, double diameter, double gamma,
                                            int64_t n, double alpha, double eps,
                                            int64_t n_samples, double* raw, double* log10_raw,
                                            double* clamped);
CCSAA_API ccsaa_status ccsaa_bound_luedtke(double lipschitz, double diameter, double gamma,
                                           int64_t n, double alpha, double eps, double beta,
                                           int64_t n_samples, double* raw, double* log10_raw,
                                           double* clamped);
CCSAA_API ccsaa_status ccsaa_bound_finite_drift(uint64_t card_x, double alpha,
                                                int64_t n_samples, const double* penalties,
                                                size_t count, double* raw, double* log10_raw,
                                                double* clamped);
CCSAA_API ccsaa_status ccsaa_bound_covering_drift(double lipschitz, double diameter,
                                                  double gamma, int64_t n, double alpha,
                                                  int64_t n_samples, const double* penalties,
                                                  size_t count, double* raw, double* log10_raw,
                                                  double* clamped);

/* Penalty probabilities p_i = (eps - rho(N+1-i)/r_i)_+ for a linear budget
 * rho(k) = rate * k. General budget forms are available through ccsaa_run. */
CCSAA_API ccsaa_status ccsaa_penalties_linear(double rate, int64_t n_samples,
                                              const double* radii, size_t count, double eps,
                                              double* out /* length count */);

/* ---- configured runs --------------------------------------------------- */

typedef struct ccsaa_result ccsaa_result; /* opaque */

/* Executes a workflow.
 *   subcommand:  "bounds" | "simulate" | "sample-size" | "sweep"
 *   config_json: configuration document (see README for the schema)
 *   out_dir:     directory for CSV artifacts and the resolved-config echo
 *   seed:        optional master seed override (NULL keeps the config value)
 *   jobs:        worker threads for simulation trials (>= 1); results are
 *                bit-identical for any value
 *
 * On CCSAA_OK and CCSAA_ERR_BOUND_CHECK a result handle is stored in *out
 * and must be released with ccsaa_result_free. */
CCSAA_API ccsaa_status ccsaa_run(const char* subcommand, const char* config_json,
                                 const char* out_dir, const uint64_t* seed, int jobs,
                                 ccsaa_result** out);

/* Human-readable run summary (printed by the CLI). */
CCSAA_API const char* ccsaa_result_summary(const ccsaa_result* result);

/* JSON echo of the fully resolved configuration. */
CCSAA_API const char* ccsaa_result_config_json(const ccsaa_result* result);

CCSAA_API size_t ccsaa_result_file_count(const ccsaa_result* result);
CCSAA_API const char* ccsaa_result_file_path(const ccsaa_result* result, size_t index);

CCSAA_API void ccsaa_result_free(ccsaa_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CCSAA_H */
