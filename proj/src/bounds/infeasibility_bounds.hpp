#pragma once

#include <cstdint>
#include <span>

#include "common/numeric.hpp"
#include "dist/budget.hpp"

namespace ccsaa::bounds {

// Bounds are reported raw (they may exceed 1; clamping would destroy the
// comparison signal between them) together with a log10 value computed in log
// space so enormous covering factors never overflow the report.
struct BoundValue {
    double raw = 0.0;
    double log10_raw = 0.0;
    double clamped = 0.0;
};

struct CoveringFactor {
    double value = 1.0;     // (L*D/gamma + 1)^n, may overflow to inf
    double log_value = 0.0; // exact natural log of the factor
};

// (L*D/gamma + 1)^n. Requires a positive margin gamma; with gamma = 0 the
// factor is unbounded and the covering bounds do not apply.
CoveringFactor covering_factor(double lipschitz, double diameter, double gamma, std::int64_t n);

// |X| * Phi(alpha*N; eps, N): finite decision sets, no drift.
BoundValue bound_finite(std::uint64_t card_x, double alpha, double eps, std::int64_t n_samples);

// (L*D/gamma + 1)^n * Phi(alpha*N; eps, N): Lipschitz constraint over a
// bounded decision set, no drift.
BoundValue bound_covering(double lipschitz, double diameter, double gamma, std::int64_t n,
                          double alpha, double eps, std::int64_t n_samples);

// ceil(1/beta) * ceil(2*L*D/gamma)^n * Phi(alpha*N; eps - beta, N): the
// classical comparison bound, with its free parameter beta in (0, eps).
BoundValue bound_luedtke(double lipschitz, double diameter, double gamma, std::int64_t n,
                         double alpha, double eps, double beta, std::int64_t n_samples);

// Penalty probabilities p_i = (eps - rho(N+1-i)/r_i)_+ entering the drift
// bounds. Degenerate radii follow the natural limits: r_i = 0 with zero
// budget keeps p_i = eps, r_i = 0 with positive budget forces p_i = 0.
Vec penalties(const dist::VariationBudget& budget, std::int64_t n_samples,
              std::span<const double> radii, double eps);

// |X| * Psi(alpha*N; p_1..p_N): finite decision sets under drift. With all
// p_i = eps this reduces bit-identically to bound_finite.
BoundValue bound_finite_drift(std::uint64_t card_x, double alpha, std::int64_t n_samples,
                              std::span<const double> p);

// (L*D/gamma + 1)^n * Psi(alpha*N; p_1..p_N); reduces bit-identically to
// bound_covering when all p_i = eps.
BoundValue bound_covering_drift(double lipschitz, double diameter, double gamma, std::int64_t n,
                                double alpha, std::int64_t n_samples, std::span<const double> p);

// Grid minimizer over beta in (0, eps) of bound_luedtke, for the fairest
// comparison when no beta is prescribed. Returns the best beta.
double best_beta_luedtke(double lipschitz, double diameter, double gamma, std::int64_t n,
                         double alpha, double eps, std::int64_t n_samples,
                         int grid_points = 999);

} // namespace ccsaa::bounds
