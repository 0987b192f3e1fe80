#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "common/rng.hpp"
#include "oracles.hpp"
#include "prob/tail_probabilities.hpp"

using namespace ccsaa;
using prob::BinomialParams;
using prob::PoissonBinomialParams;

TEST_CASE("binomial cdf anchor values") {
    CHECK(prob::binomial_cdf(0.0, {10, 0.1}) == doctest::Approx(0.3486784401).epsilon(1e-12));
    CHECK(prob::binomial_cdf(10.0, {10, 0.37}) == 1.0);
    CHECK(prob::binomial_cdf(5.0, {5, 0.9}) == 1.0);
    CHECK(prob::binomial_cdf(2.0, {10, 0.1}) ==
          doctest::Approx(0.9298091736).epsilon(1e-12));
    // z snapping: 3 - 1e-10 counts the i = 3 term.
    CHECK(prob::binomial_cdf(3.0 - 1e-10, {10, 0.1}) ==
          prob::binomial_cdf(3.0, {10, 0.1}));
    CHECK(prob::binomial_cdf(0.0, {10, 0.0}) == 1.0);
    CHECK(prob::binomial_cdf(5.0, {10, 1.0}) == 0.0);
}

TEST_CASE("binomial cdf matches the 50-digit oracle") {
    for (const auto& [n, eps, alpha] : {std::tuple<std::int64_t, double, double>{10, 0.1, 0.2},
                                        {100, 0.1, 0.05},
                                        {500, 0.075, 0.05},
                                        {2000, 0.1, 0.05},
                                        {100000, 0.03, 0.028}}) {
        const double z = alpha * static_cast<double>(n);
        const double got = prob::binomial_cdf(z, {n, eps});
        const auto want = oracle::binomial_cdf(oracle::z_floor(alpha, n), oracle::dec50(eps), n);
        CHECK(std::abs(got - want.convert_to<double>()) < 1e-12);
    }
    // Mid-distribution mass at large N.
    const double got = prob::binomial_cdf(50000.0, {100000, 0.5});
    const auto want = oracle::binomial_cdf(50000, oracle::dec50(0.5), 100000);
    CHECK(std::abs(got - want.convert_to<double>()) < 1e-12);
}

TEST_CASE("binomial cdf domain errors") {
    CHECK_THROWS_AS(prob::binomial_cdf(-0.5, {10, 0.1}), std::domain_error);
    CHECK_THROWS_AS(prob::binomial_cdf(11.0, {10, 0.1}), std::domain_error);
    CHECK_THROWS_AS(prob::binomial_cdf(1.0, {10, -0.1}), std::domain_error);
    CHECK_THROWS_AS(prob::binomial_cdf(1.0, {10, 1.1}), std::domain_error);
    CHECK_THROWS_AS(prob::binomial_cdf(0.0, {0, 0.1}), std::domain_error);
}

TEST_CASE("binomial cdf monotone in z and eps") {
    for (std::int64_t n : {7, 40, 173}) {
        double prev = -1.0;
        for (std::int64_t k = 0; k <= n; ++k) {
            const double v = prob::binomial_cdf(static_cast<double>(k), {n, 0.23});
            CHECK(v >= prev);
            prev = v;
        }
        prev = 2.0;
        for (double eps = 0.0; eps <= 1.0; eps += 0.05) {
            const double v = prob::binomial_cdf(static_cast<double>(n / 3), {n, eps});
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("poisson binomial basics") {
    CHECK(prob::poisson_binomial_cdf(1.0, {{0.5, 0.5}}) == doctest::Approx(0.75).epsilon(1e-15));
    // zero-success case is the product of failure probabilities
    const std::vector<double> q{0.1, 0.3, 0.7, 0.2};
    double prod = 1.0;
    for (double qi : q) prod *= 1.0 - qi;
    CHECK(prob::poisson_binomial_cdf(0.0, {q}) == doctest::Approx(prod).epsilon(1e-14));
    // equal probabilities delegate to the binomial, bit for bit
    for (double qv : {0.0, 0.2, 0.5, 1.0}) {
        const std::vector<double> eq(17, qv);
        CHECK(prob::poisson_binomial_cdf(6.0, {eq}) ==
              prob::binomial_cdf(6.0, {17, qv}));
    }
    CHECK_THROWS_AS(prob::poisson_binomial_cdf(0.0, {{}}), std::domain_error);
    CHECK_THROWS_AS(prob::poisson_binomial_cdf(0.0, {{0.5, 1.2}}), std::domain_error);
}

TEST_CASE("poisson binomial equals exhaustive enumeration") {
    Rng rng(0xBEEF01);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % 15);
        std::vector<double> q(n);
        for (auto& v : q) v = rng.uniform01();
        const auto z = static_cast<double>(rng.next_u64() % (n + 1));
        const double got = prob::poisson_binomial_cdf(z, {q});
        const auto want = static_cast<double>(
            oracle::enum_poisson_binomial_cdf(static_cast<std::int64_t>(z), q));
        CHECK(std::abs(got - want) < 1e-12);
    }
}

TEST_CASE("poisson binomial permutation invariance is exact") {
    Rng rng(0xBEEF02);
    std::vector<double> q(23);
    for (auto& v : q) v = rng.uniform01();
    const double base = prob::poisson_binomial_cdf(7.0, {q});
    for (int shuffle = 0; shuffle < 20; ++shuffle) {
        for (std::size_t i = q.size(); i > 1; --i)
            std::swap(q[i - 1], q[rng.next_u64() % i]);
        CHECK(prob::poisson_binomial_cdf(7.0, {q}) == base);
    }
}

TEST_CASE("poisson binomial nonincreasing in each probability") {
    Rng rng(0xBEEF03);
    std::vector<double> q(9);
    for (auto& v : q) v = rng.uniform01();
    const double z = 4.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        double prev = 2.0;
        for (double qi = 0.0; qi <= 1.000001; qi += 0.125) {
            auto probe = q;
            probe[i] = std::min(qi, 1.0);
            const double v = prob::poisson_binomial_cdf(z, {probe});
            CHECK(v <= prev + 1e-13);
            prev = v;
        }
    }
}

TEST_CASE("hoeffding tail value and dominance") {
    const std::vector<double> p(100, 0.08);
    CHECK(prob::hoeffding_tail(0.05, p) ==
          doctest::Approx(std::exp(-0.18)).epsilon(1e-13));

    // inapplicable when mean(p) <= level
    const std::vector<double> at_level(10, 0.05);
    CHECK_THROWS_WITH_AS(prob::hoeffding_tail(0.05, at_level),
                         doctest::Contains("inapplicable"), std::domain_error);

    Rng rng(0xBEEF04);
    int applicable = 0;
    while (applicable < 40) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.next_u64() % 60);
        std::vector<double> probs(n);
        for (auto& v : probs) v = rng.uniform01();
        double mean = 0.0;
        for (double v : probs) mean += v;
        mean /= static_cast<double>(n);
        const double alpha = rng.uniform01();
        if (!(mean > alpha)) continue;
        ++applicable;
        const double envelope = prob::hoeffding_tail(alpha, probs);
        const double exact =
            prob::poisson_binomial_cdf(alpha * static_cast<double>(n), {probs});
        CHECK(envelope >= exact - 1e-12);
    }
}

TEST_CASE("min sample size formula and boundary behavior") {
    CHECK(prob::min_sample_size(100, 0.05, 0.1, 0.05, 0.02) == 4223);
    CHECK(prob::min_sample_size(1, std::exp(-1.0), 0.2, 0.05, 0.05) == 50);

    // doubling the cardinality grows N by at most ceil(ln 2 / (2 gap^2))
    for (std::uint64_t card : {3ull, 10ull, 257ull}) {
        const double gap = 0.1 - 0.05 - 0.02;
        const auto step = static_cast<std::int64_t>(
            std::ceil(std::log(2.0) / (2.0 * gap * gap)));
        const auto n1 = prob::min_sample_size(card, 0.05, 0.1, 0.05, 0.02);
        const auto n2 = prob::min_sample_size(2 * card, 0.05, 0.1, 0.05, 0.02);
        CHECK(n2 >= n1);
        CHECK(n2 - n1 <= step);
    }

    CHECK_THROWS_WITH_AS(prob::min_sample_size(10, 0.1, 0.1, 0.05, 0.07),
                         doctest::Contains("alpha < alpha + theta < epsilon"),
                         std::domain_error);
    CHECK_THROWS_AS(prob::min_sample_size(10, 0.0, 0.1, 0.05, 0.02), std::domain_error);
    CHECK_THROWS_AS(prob::min_sample_size(10, 0.1, 0.1, 0.0, 0.02), std::domain_error);
}

TEST_CASE("min sample size meets the union-bound target") {
    Rng rng(0xBEEF05);
    for (int t = 0; t < 25; ++t) {
        const std::uint64_t card = 1 + rng.next_u64() % 400;
        const double eps = 0.05 + 0.3 * rng.uniform01();
        const double alpha = eps * (0.1 + 0.5 * rng.uniform01());
        const double theta = (eps - alpha) * (0.2 + 0.6 * rng.uniform01());
        const double delta = 0.01 + 0.4 * rng.uniform01();
        const auto n = prob::min_sample_size(card, delta, eps, alpha, theta);

        const auto envelope = [&](std::int64_t trials) {
            const std::vector<double> p(static_cast<std::size_t>(trials), eps - theta);
            return static_cast<double>(card) * prob::hoeffding_tail(alpha, p);
        };
        CHECK(envelope(n) <= delta * (1.0 + 1e-9));
        if (n > 1) {
            // One fewer sample breaks the target unless the bound was integral.
            const double at_prev = envelope(n - 1);
            const double gap = eps - alpha - theta;
            const double exact_req =
                std::log(static_cast<double>(card) / delta) / (2.0 * gap * gap);
            const bool integral = std::abs(exact_req - std::nearbyint(exact_req)) < 1e-7;
            if (!integral) CHECK(at_prev > delta * (1.0 - 1e-9));
        }
    }
}
