#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "common/numeric.hpp"

namespace ccsaa::saa {

enum class ConstraintKind { bi_affine, black_box };

// Scalar constraint g(x, xi); the point x is feasible for realization xi when
// g(x, xi) <= 0.
struct ConstraintFunction {
    ConstraintKind kind = ConstraintKind::bi_affine;

    // bi_affine: g(x, u) = <x, u> - offset
    double offset = 0.0;

    // black_box: deterministic callback, with an optionally declared Lipschitz
    // constant in x (sup norm) and optionally declared monotonicity in a
    // scalar xi, which unlocks exact CDF evaluation of violation
    // probabilities.
    std::function<double(std::span<const double>, std::span<const double>)> eval_fn;
    std::optional<double> lipschitz;
    int monotone_in_xi = 0; // +1 increasing, -1 decreasing, 0 undeclared

    static ConstraintFunction bi_affine(double offset);
    static ConstraintFunction black_box(
        std::function<double(std::span<const double>, std::span<const double>)> fn,
        std::optional<double> lipschitz = std::nullopt, int monotone_in_xi = 0);

    double evaluate(std::span<const double> x, std::span<const double> xi) const;
};

enum class DecisionSetKind { finite, box };

struct DecisionSet {
    DecisionSetKind kind = DecisionSetKind::finite;
    std::vector<Vec> points; // finite: nonempty, duplicate-free
    Vec lower, upper;        // box

    std::size_t dim() const;
    std::size_t size() const { return points.size(); }
    double linf_diameter() const; // box only
    void validate() const;

    static DecisionSet finite(std::vector<Vec> points);
    static DecisionSet box(Vec lo, Vec hi);
};

struct RiskConfig {
    double epsilon = 0.1; // admissible violation probability
    double alpha = 0.0;   // empirical risk level
    double gamma = 0.0;   // tightening margin
    std::optional<double> delta;     // confidence parameter
    std::optional<double> theta;     // radius rule constant
    std::optional<double> lipschitz; // L
    std::optional<double> diameter;  // D
    std::optional<std::int64_t> dim_n;

    void validate() const;
};

struct ProblemInstance {
    DecisionSet decision_set;
    ConstraintFunction constraint;
    std::optional<Vec> objective; // linear coefficients
    RiskConfig risk;

    void validate() const;
};

} // namespace ccsaa::saa
