#include "prob/tail_probabilities.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "common/numeric.hpp"

namespace ccsaa::prob {

namespace {

// glibc's lgammal writes the global signgam; the _r form keeps pure-function
// calls safe from any number of threads.
long double lgamma_ld(long double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgammal_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

void validate_tail_args(double z, std::int64_t trials) {
    if (trials < 1)
        throw std::domain_error("binomial_cdf: trials must be >= 1");
    if (std::isnan(z) || z < 0.0 || z > static_cast<double>(trials))
        throw std::domain_error("binomial_cdf: z outside [0, N], got " + std::to_string(z));
}

} // namespace

double binomial_cdf(double z, const BinomialParams& params) {
    validate_tail_args(z, params.trials);
    const double eps = params.success_prob;
    if (std::isnan(eps) || eps < 0.0 || eps > 1.0)
        throw std::domain_error("binomial_cdf: success probability outside [0, 1]");

    const std::int64_t n = params.trials;
    const std::int64_t k = std::clamp<std::int64_t>(floor_snapped(z), 0, n);
    if (k >= n) return 1.0;
    if (eps == 0.0) return 1.0;
    if (eps == 1.0) return 0.0;

    const auto nl = static_cast<long double>(n);
    const long double log_eps = std::log(static_cast<long double>(eps));
    const long double log_1me = std::log1p(-static_cast<long double>(eps));
    const long double lg_n1 = lgamma_ld(nl + 1.0L);

    CompensatedSum<long double> sum;
    for (std::int64_t i = 0; i <= k; ++i) {
        const auto il = static_cast<long double>(i);
        const long double log_term = lg_n1 - lgamma_ld(il + 1.0L) -
                                     lgamma_ld(nl - il + 1.0L) + il * log_eps +
                                     (nl - il) * log_1me;
        sum.add(std::exp(log_term));
    }
    const auto value = static_cast<double>(sum.value());
    return std::clamp(value, 0.0, 1.0);
}

double poisson_binomial_cdf(double z, const PoissonBinomialParams& params) {
    const auto& q = params.success_probs;
    if (q.empty())
        throw std::domain_error("poisson_binomial_cdf: empty probability list");
    for (double qi : q)
        if (std::isnan(qi) || qi < 0.0 || qi > 1.0)
            throw std::domain_error("poisson_binomial_cdf: probability outside [0, 1]");
    const auto n = static_cast<std::int64_t>(q.size());
    validate_tail_args(z, n);

    if (std::all_of(q.begin(), q.end(), [&](double qi) { return qi == q.front(); }))
        return binomial_cdf(z, BinomialParams{n, q.front()});

    const std::int64_t k = std::clamp<std::int64_t>(floor_snapped(z), 0, n);
    if (k >= n) return 1.0;

    std::vector<double> sorted(q);
    std::sort(sorted.begin(), sorted.end());

    // mass[j] = P(exactly j successes among the variables processed so far),
    // maintained only up to index k: higher entries never flow back down.
    std::vector<long double> mass(static_cast<std::size_t>(k) + 1, 0.0L);
    mass[0] = 1.0L;
    std::size_t top = 0;
    for (double qi : sorted) {
        const auto ql = static_cast<long double>(qi);
        const long double pl = 1.0L - ql;
        top = std::min<std::size_t>(top + 1, static_cast<std::size_t>(k));
        for (std::size_t j = top; j >= 1; --j)
            mass[j] = mass[j] * pl + mass[j - 1] * ql;
        mass[0] *= pl;
    }

    CompensatedSum<long double> sum;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j) sum.add(mass[j]);
    const auto value = static_cast<double>(sum.value());
    return std::clamp(value, 0.0, 1.0);
}

double hoeffding_tail(double z_level, std::span<const double> probs) {
    if (probs.empty())
        throw std::domain_error("hoeffding_tail: empty probability list");
    if (std::isnan(z_level) || z_level < 0.0 || z_level > 1.0)
        throw std::domain_error("hoeffding_tail: level outside [0, 1]");
    CompensatedSum<double> acc;
    bool all_equal = true;
    for (double p : probs) {
        if (std::isnan(p) || p < 0.0 || p > 1.0)
            throw std::domain_error("hoeffding_tail: probability outside [0, 1]");
        all_equal = all_equal && p == probs.front();
        acc.add(p);
    }
    const auto n = static_cast<double>(probs.size());
    // An all-equal vector has its mean exactly; summation must not push a
    // boundary case (mean == level) into false applicability.
    const double mean = all_equal ? probs.front() : acc.value() / n;
    if (!(mean > z_level))
        throw std::domain_error(
            "hoeffding_tail: bound inapplicable, requires mean(p) > level (mean=" +
            std::to_string(mean) + ", level=" + std::to_string(z_level) + ")");
    const double gap = mean - z_level;
    return std::exp(-2.0 * n * gap * gap);
}

std::int64_t min_sample_size(std::uint64_t card_x, double delta, double eps,
                             double alpha, double theta) {
    if (card_x < 1)
        throw std::domain_error("min_sample_size: card_x must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("min_sample_size: delta must lie in (0, 1)");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::domain_error("min_sample_size: epsilon must lie in (0, 1]");
    if (!(alpha > 0.0 && alpha < eps && theta > 0.0 && alpha + theta < eps))
        throw std::domain_error(
            "min_sample_size: parameter ordering violated, require "
            "alpha < alpha + theta < epsilon (alpha=" +
            std::to_string(alpha) + ", theta=" + std::to_string(theta) +
            ", epsilon=" + std::to_string(eps) + ")");

    const long double gap = static_cast<long double>(eps) - static_cast<long double>(alpha) -
                            static_cast<long double>(theta);
    const long double rhs =
        std::log(static_cast<long double>(card_x) / static_cast<long double>(delta)) /
        (2.0L * gap * gap);
    const std::int64_t n = ceil_snapped(static_cast<double>(rhs));
    return std::max<std::int64_t>(n, 1);
}

} // namespace ccsaa::prob
