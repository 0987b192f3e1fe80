#include "ccsaa/ccsaa.h"

#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bounds/infeasibility_bounds.hpp"
#include "common/errors.hpp"
#include "io/config.hpp"
#include "prob/tail_probabilities.hpp"

struct ccsaa_result {
    std::string summary;
    std::string resolved_config;
    std::vector<std::string> files;
};

namespace {

thread_local std::string g_last_error;

ccsaa_status fail(ccsaa_status code, const char* what) {
    g_last_error = what != nullptr ? what : "unknown error";
    return code;
}

// Runs `fn`, translating exceptions into status codes; validation-type errors
// (bad arguments, schema problems) map to CCSAA_ERR_VALIDATION, everything
// else to CCSAA_ERR_INTERNAL.
template <typename Fn>
ccsaa_status guarded(Fn&& fn) {
    try {
        fn();
        return CCSAA_OK;
    } catch (const ccsaa::validation_error& e) {
        return fail(CCSAA_ERR_VALIDATION, e.what());
    } catch (const std::domain_error& e) {
        return fail(CCSAA_ERR_VALIDATION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(CCSAA_ERR_VALIDATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CCSAA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CCSAA_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CCSAA_ERR_INTERNAL, "unknown error");
    }
}

ccsaa_status require_out(const void* p) {
    if (p == nullptr) return fail(CCSAA_ERR_VALIDATION, "output pointer is null");
    return CCSAA_OK;
}

void store_bound(const ccsaa::bounds::BoundValue& v, double* raw, double* log10_raw,
                 double* clamped) {
    if (raw != nullptr) *raw = v.raw;
    if (log10_raw != nullptr) *log10_raw = v.log10_raw;
    if (clamped != nullptr) *clamped = v.clamped;
}

} // namespace

extern "C" {

const char* ccsaa_last_error(void) { return g_last_error.c_str(); }

const char* ccsaa_version(void) { return "1.0.0"; }

ccsaa_status ccsaa_binomial_cdf(double z, double eps, int64_t trials, double* out) {
    if (auto s = require_out(out); s != CCSAA_OK) return s;
    return guarded([&] { *out = ccsaa::prob::binomial_cdf(z, {trials, eps}); });
}

ccsaa_status ccsaa_poisson_binomial_cdf(double z, const double* probs, size_t count,
                                        double* out) {
    if (auto s = require_out(out); s != CCSAA_OK) return s;
    if (probs == nullptr && count > 0) return fail(CCSAA_ERR_VALIDATION, "probs is null");
    return guarded([&] {
        *out = ccsaa::prob::poisson_binomial_cdf(
            z, {std::vector<double>(probs, probs + count)});
    });
}

ccsaa_status ccsaa_hoeffding_tail(double level, const double* probs, size_t count,
                                  double* out) {
    if (auto s = require_out(out); s != CCSAA_OK) return s;
    if (probs == nullptr && count > 0) return fail(CCSAA_ERR_VALIDATION, "probs is null");
    return guarded([&] {
        *out = ccsaa::prob::hoeffding_tail(level, std::span<const double>(probs, count));
    });
}

ccsaa_status ccsaa_min_sample_size(uint64_t card_x, double delta, double eps, double alpha,
                                   double theta, int64_t* out) {
    if (auto s = require_out(out); s != CCSAA_OK) return s;
    return guarded(
        [&] { *out = ccsaa::prob::min_sample_size(card_x, delta, eps, alpha, theta); });
}

ccsaa_status ccsaa_covering_factor(double lipschitz, double diameter, double gamma, int64_t n,
                                   double* out_value, double* out_log) {
    return guarded([&] {
        const auto f = ccsaa::bounds::covering_factor(lipschitz, diameter, gamma, n);
        if (out_value != nullptr) *out_value = f.value;
        if (out_log != nullptr) *out_log = f.log_value;
    });
}

ccsaa_status ccsaa_bound_finite(uint64_t card_x, double alpha, double eps, int64_t n_samples,
                                double* raw, double* log10_raw, double* clamped) {
    return guarded([&] {
        store_bound(ccsaa::bounds::bound_finite(card_x, alpha, eps, n_samples), raw, log10_raw,
                    clamped);
    });
}

ccsaa_status ccsaa_bound_covering(double lipschitz, double diameter, double gamma, int64_t n,
                                  double alpha, double eps, int64_t n_samples, double* raw,
                                  double* log10_raw, double* clamped) {
    return guarded([&] {
        store_bound(
            ccsaa::bounds::bound_covering(lipschitz, diameter, gamma, n, alpha, eps, n_samples),
            raw, log10_raw, clamped);
    });
}

ccsaa_status ccsaa_bound_luedtke(double lipschitz, double diameter, double gamma, int64_t n,
                                 double alpha, double eps, double beta, int64_t n_samples,
                                 double* raw, double* log10_raw, double* clamped) {
    return guarded([&] {
        store_bound(ccsaa::bounds::bound_luedtke(lipschitz, diameter, gamma, n, alpha, eps,
                                                 beta, n_samples),
                    raw, log10_raw, clamped);
    });
}

ccsaa_status ccsaa_bound_finite_drift(uint64_t card_x, double alpha, int64_t n_samples,
                                      const double* penalties, size_t count, double* raw,
                                      double* log10_raw, double* clamped) {
    if (penalties == nullptr && count > 0)
        return fail(CCSAA_ERR_VALIDATION, "penalties is null");
    return guarded([&] {
        store_bound(ccsaa::bounds::bound_finite_drift(
                        card_x, alpha, n_samples, std::span<const double>(penalties, count)),
                    raw, log10_raw, clamped);
    });
}

ccsaa_status ccsaa_bound_covering_drift(double lipschitz, double diameter, double gamma,
                                        int64_t n, double alpha, int64_t n_samples,
                                        const double* penalties, size_t count, double* raw,
                                        double* log10_raw, double* clamped) {
    if (penalties == nullptr && count > 0)
        return fail(CCSAA_ERR_VALIDATION, "penalties is null");
    return guarded([&] {
        store_bound(ccsaa::bounds::bound_covering_drift(
                        lipschitz, diameter, gamma, n, alpha, n_samples,
                        std::span<const double>(penalties, count)),
                    raw, log10_raw, clamped);
    });
}

ccsaa_status ccsaa_penalties_linear(double rate, int64_t n_samples, const double* radii,
                                    size_t count, double eps, double* out) {
    if (auto s = require_out(out); s != CCSAA_OK) return s;
    if (radii == nullptr && count > 0) return fail(CCSAA_ERR_VALIDATION, "radii is null");
    return guarded([&] {
        const auto p = ccsaa::bounds::penalties(ccsaa::dist::VariationBudget::linear(rate),
                                                n_samples,
                                                std::span<const double>(radii, count), eps);
        std::memcpy(out, p.data(), p.size() * sizeof(double));
    });
}

ccsaa_status ccsaa_run(const char* subcommand, const char* config_json, const char* out_dir,
                       const uint64_t* seed, int jobs, ccsaa_result** out) {
    if (auto s = require_out(out); s != CCSAA_OK) return s;
    *out = nullptr;
    if (subcommand == nullptr) return fail(CCSAA_ERR_VALIDATION, "subcommand is null");
    if (config_json == nullptr) return fail(CCSAA_ERR_VALIDATION, "config_json is null");
    if (out_dir == nullptr) return fail(CCSAA_ERR_VALIDATION, "out_dir is null");

    ccsaa::jobs::JobOutput output;
    const ccsaa_status status = guarded([&] {
        output = ccsaa::jobs::run_job(
            subcommand, config_json, out_dir,
            seed != nullptr ? std::optional<uint64_t>(*seed) : std::nullopt, jobs);
    });
    if (status != CCSAA_OK) return status;

    auto* result = new ccsaa_result{std::move(output.summary), std::move(output.resolved_config),
                                    std::move(output.files)};
    *out = result;
    if (output.exit_code == 2)
        return fail(CCSAA_ERR_BOUND_CHECK,
                    "an empirical estimate exceeded a theoretical bound (outputs were "
                    "written)");
    return CCSAA_OK;
}

const char* ccsaa_result_summary(const ccsaa_result* result) {
    return result != nullptr ? result->summary.c_str() : "";
}

const char* ccsaa_result_config_json(const ccsaa_result* result) {
    return result != nullptr ? result->resolved_config.c_str() : "";
}

size_t ccsaa_result_file_count(const ccsaa_result* result) {
    return result != nullptr ? result->files.size() : 0;
}

const char* ccsaa_result_file_path(const ccsaa_result* result, size_t index) {
    if (result == nullptr || index >= result->files.size()) return nullptr;
    return result->files[index].c_str();
}

void ccsaa_result_free(ccsaa_result* result) { delete result; }

} // extern "C"
