#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dist/budget.hpp"
#include "dist/distribution.hpp"
#include "saa/batch.hpp"
#include "saa/constraint.hpp"
#include "saa/robust.hpp"

namespace ccsaa::saa {

// Empirical violation fractions are kept as exact integer counts; feasibility
// comparisons against alpha are done as exact rational comparisons, never as
// floating-point division.
struct ViolationCount {
    std::int64_t violations = 0;
    std::int64_t total = 0;
    bool approximate = false; // true when a black-box inner maximization was sampled

    double value() const {
        return static_cast<double>(violations) / static_cast<double>(total);
    }
};

// Fraction of samples with g(x, xi_i) + gamma > 0 (strict). Radii are ignored.
ViolationCount empirical_violation(const ConstraintFunction& g, std::span<const double> x,
                                   const SampleBatch& batch, double gamma);

// Fraction of samples whose uncertainty set contains a point u with
// g(x, u) + gamma > 0, i.e. robust_sup + gamma > 0. With all radii zero this
// coincides with empirical_violation exactly.
ViolationCount robust_empirical_violation(const ConstraintFunction& g,
                                          std::span<const double> x, const SampleBatch& batch,
                                          double gamma, const RobustOptions& opt = {});

// Indices of the finite decision set with robust empirical violation <= alpha
// (non-strict comparison, exact rationals).
std::vector<std::size_t> feasible_set(const ProblemInstance& instance, const SampleBatch& batch,
                                      double gamma, const RobustOptions& opt = {});

struct SolveResult {
    bool feasible = false;
    std::size_t index = 0;
    Vec point;
    double objective = 0.0;
};

// Argmin of the linear objective over the feasible set; ties break toward the
// lexicographically smaller point.
SolveResult solve_by_enumeration(const ProblemInstance& instance, const SampleBatch& batch,
                                 double gamma, const RobustOptions& opt = {});

// Radii r_i = rho(N + 1 - i) / theta: older samples carry wider uncertainty
// sets. A zero budget collapses the robust scheme to the classic one.
Vec radii_from_theta(const dist::VariationBudget& budget, std::int64_t n_samples, double theta);

struct TrueViolationOptions {
    std::int64_t draws = 1'000'000;
    std::uint64_t seed = 0x5EED1234ABCDEFull;
};

struct ViolationProbability {
    double value = 0.0;
    double std_error = 0.0;
    bool exact = true;
};

// P{ g(x, xi) > 0 } under the target distribution. Closed forms: dirac and
// discrete targets (finite sums), bi-affine with an isotropic gaussian target
// (normal CDF), bi-affine with a one-dimensional uniform target, and
// one-dimensional black-box constraints with declared monotonicity (root
// bracketing plus CDF). Everything else falls back to Monte Carlo with the
// standard error reported.
ViolationProbability true_violation_probability(const ConstraintFunction& g,
                                                std::span<const double> x,
                                                const dist::DistributionSpec& target,
                                                const TrueViolationOptions& opt = {});

// Checks a declared Lipschitz constant on random decision pairs; throws a
// domain error when |g(x,xi) - g(y,xi)| exceeds L * ||x - y||_inf + 1e-9.
void check_declared_lipschitz(const ConstraintFunction& g,
                              const std::vector<Vec>& decision_points,
                              const std::vector<Vec>& realizations);

} // namespace ccsaa::saa
