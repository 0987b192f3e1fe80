#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ccsaa::prob {

struct BinomialParams {
    std::int64_t trials = 1;     // N >= 1
    double success_prob = 0.0;   // in [0, 1]
};

struct PoissonBinomialParams {
    std::vector<double> success_probs; // nonempty, each in [0, 1]
};

// Lower-tail CDF of a binomial random variable: the probability of at most
// floor(z) successes out of N independent trials with common success
// probability. Terms are built in log space (long double lgamma) and combined
// with compensated summation, which keeps the absolute error below 1e-12 for
// N up to 1e5 without overflowing binomial coefficients or underflowing
// powers. z within 1e-9 of an integer snaps to it before flooring.
double binomial_cdf(double z, const BinomialParams& params);

// Lower-tail CDF of a sum of independent Bernoulli variables with
// heterogeneous success probabilities. Exact truncated convolution over the
// probability mass vector, O(N * min(floor(z)+1, N)). The vector is brought
// to a canonical order first, so the result is bit-identical under any
// permutation of the inputs; an all-equal vector delegates to binomial_cdf,
// making that reduction exact as well.
double poisson_binomial_cdf(double z, const PoissonBinomialParams& params);

// Hoeffding upper bound exp(-2N(mean(p) - a)^2) on the lower tail at a*N.
// Requires mean(p) > a; otherwise the bound does not apply and a domain error
// is raised rather than returning a vacuous value.
double hoeffding_tail(double z_level, std::span<const double> probs);

// Smallest sample size N with N >= ln(card_x / delta) / (2 (eps-alpha-theta)^2).
// The inequality is non-strict: an exactly integral right-hand side is
// returned as-is.
std::int64_t min_sample_size(std::uint64_t card_x, double delta, double eps,
                             double alpha, double theta);

} // namespace ccsaa::prob
