#include "bounds/infeasibility_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prob/tail_probabilities.hpp"

namespace ccsaa::bounds {

namespace {

constexpr double kLn10 = 2.302585092994045684;

BoundValue assemble(double factor_linear, double factor_log, double tail) {
    BoundValue b;
    b.raw = factor_linear * tail;
    if (!std::isfinite(b.raw) && tail > 0.0) b.raw = std::exp(factor_log + std::log(tail));
    b.log10_raw = tail > 0.0 ? (factor_log + std::log(tail)) / kLn10
                             : -std::numeric_limits<double>::infinity();
    b.clamped = std::min(b.raw, 1.0);
    return b;
}

double ipow(double base, std::int64_t e) {
    double r = 1.0, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

void validate_covering_args(double lipschitz, double diameter, double gamma, std::int64_t n) {
    if (!(lipschitz > 0.0) || !(diameter > 0.0))
        throw std::domain_error("covering bound: L and D must be > 0");
    if (gamma == 0.0)
        throw std::domain_error("covering bound requires positive margin");
    if (!(gamma > 0.0))
        throw std::domain_error("covering bound: gamma must be > 0");
    if (n < 1) throw std::domain_error("covering bound: dimension must be >= 1");
}

} // namespace

CoveringFactor covering_factor(double lipschitz, double diameter, double gamma, std::int64_t n) {
    validate_covering_args(lipschitz, diameter, gamma, n);
    CoveringFactor f;
    f.log_value = static_cast<double>(n) * std::log1p(lipschitz * diameter / gamma);
    f.value = std::exp(f.log_value);
    return f;
}

BoundValue bound_finite(std::uint64_t card_x, double alpha, double eps, std::int64_t n_samples) {
    if (card_x < 1) throw std::domain_error("bound_finite: card_x must be >= 1");
    const double tail = prob::binomial_cdf(alpha * static_cast<double>(n_samples),
                                           {n_samples, eps});
    const auto card = static_cast<double>(card_x);
    return assemble(card, std::log(card), tail);
}

BoundValue bound_covering(double lipschitz, double diameter, double gamma, std::int64_t n,
                          double alpha, double eps, std::int64_t n_samples) {
    const CoveringFactor f = covering_factor(lipschitz, diameter, gamma, n);
    const double tail = prob::binomial_cdf(alpha * static_cast<double>(n_samples),
                                           {n_samples, eps});
    return assemble(f.value, f.log_value, tail);
}

BoundValue bound_luedtke(double lipschitz, double diameter, double gamma, std::int64_t n,
                         double alpha, double eps, double beta, std::int64_t n_samples) {
    validate_covering_args(lipschitz, diameter, gamma, n);
    if (!(beta > 0.0 && beta < eps))
        throw std::domain_error("bound_luedtke: beta must lie in (0, epsilon)");
    const auto c1 = static_cast<double>(ceil_snapped(1.0 / beta));
    const auto c2 = static_cast<double>(ceil_snapped(2.0 * lipschitz * diameter / gamma));
    const double factor_log = std::log(c1) + static_cast<double>(n) * std::log(c2);
    const double factor_linear = factor_log < 700.0
                                     ? c1 * ipow(c2, n)
                                     : std::numeric_limits<double>::infinity();
    const double tail = prob::binomial_cdf(alpha * static_cast<double>(n_samples),
                                           {n_samples, eps - beta});
    return assemble(factor_linear, factor_log, tail);
}

Vec penalties(const dist::VariationBudget& budget, std::int64_t n_samples,
              std::span<const double> radii, double eps) {
    if (static_cast<std::int64_t>(radii.size()) != n_samples)
        throw std::domain_error("penalties: radii length must equal the sample count");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::domain_error("penalties: epsilon outside [0, 1]");
    Vec p(radii.size());
    for (std::int64_t i = 1; i <= n_samples; ++i) {
        const double rho = budget.eval(n_samples + 1 - i);
        const double r = radii[static_cast<std::size_t>(i - 1)];
        if (!(r >= 0.0)) throw std::domain_error("penalties: radii must be >= 0");
        double pi;
        if (r > 0.0) pi = std::max(eps - rho / r, 0.0);
        else pi = rho == 0.0 ? eps : 0.0;
        p[static_cast<std::size_t>(i - 1)] = pi;
    }
    return p;
}

BoundValue bound_finite_drift(std::uint64_t card_x, double alpha, std::int64_t n_samples,
                              std::span<const double> p) {
    if (card_x < 1) throw std::domain_error("bound_finite_drift: card_x must be >= 1");
    const double tail = prob::poisson_binomial_cdf(alpha * static_cast<double>(n_samples),
                                                   {Vec(p.begin(), p.end())});
    const auto card = static_cast<double>(card_x);
    return assemble(card, std::log(card), tail);
}

BoundValue bound_covering_drift(double lipschitz, double diameter, double gamma, std::int64_t n,
                                double alpha, std::int64_t n_samples,
                                std::span<const double> p) {
    const CoveringFactor f = covering_factor(lipschitz, diameter, gamma, n);
    const double tail = prob::poisson_binomial_cdf(alpha * static_cast<double>(n_samples),
                                                   {Vec(p.begin(), p.end())});
    return assemble(f.value, f.log_value, tail);
}

double best_beta_luedtke(double lipschitz, double diameter, double gamma, std::int64_t n,
                         double alpha, double eps, std::int64_t n_samples, int grid_points) {
    if (grid_points < 1) throw std::domain_error("best_beta_luedtke: grid must be nonempty");
    double best_beta = eps / 2.0;
    double best_log10 = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= grid_points; ++t) {
        const double beta = eps * static_cast<double>(t) / static_cast<double>(grid_points + 1);
        const BoundValue b =
            bound_luedtke(lipschitz, diameter, gamma, n, alpha, eps, beta, n_samples);
        if (b.log10_raw < best_log10) {
            best_log10 = b.log10_raw;
            best_beta = beta;
        }
    }
    return best_beta;
}

} // namespace ccsaa::bounds
