#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "bounds/infeasibility_bounds.hpp"
#include "common/rng.hpp"
#include "oracles.hpp"
#include "prob/tail_probabilities.hpp"
#include "saa/engine.hpp"

using namespace ccsaa;

TEST_CASE("covering factor") {
    auto f = bounds::covering_factor(1.0, 1.0, 1.0, 10); // L*D/gamma = 1
    CHECK(f.value == doctest::Approx(1024.0).epsilon(1e-14));
    CHECK(f.log_value == doctest::Approx(10.0 * std::log(2.0)).epsilon(1e-14));

    f = bounds::covering_factor(3.0, 1.0, 1.0, 1);
    CHECK(f.value == doctest::Approx(4.0));

    // margin -> infinity: factor -> 1
    f = bounds::covering_factor(1.0, 1.0, 1e12, 5);
    CHECK(f.value == doctest::Approx(1.0).epsilon(1e-10));

    // enormous dimension: value overflows but the log stays finite
    f = bounds::covering_factor(1.0, 1.0, 1.0, 5000);
    CHECK(std::isinf(f.value));
    CHECK(f.log_value == doctest::Approx(5000.0 * std::log(2.0)));

    CHECK_THROWS_WITH_AS(bounds::covering_factor(1.0, 1.0, 0.0, 10),
                         doctest::Contains("positive margin"), std::domain_error);
    CHECK_THROWS_AS(bounds::covering_factor(0.0, 1.0, 1.0, 10), std::domain_error);
}

TEST_CASE("finite-set bound") {
    auto b = bounds::bound_finite(1, 0.0, 0.1, 10);
    CHECK(b.raw == doctest::Approx(0.3486784401).epsilon(1e-12));
    CHECK(b.clamped == b.raw);

    // certain violation: the tail is empty
    b = bounds::bound_finite(50, 0.05, 1.0, 20);
    CHECK(b.raw == 0.0);
    CHECK(std::isinf(b.log10_raw));

    b = bounds::bound_finite(50, 0.05, 0.1, 20);
    CHECK(oracle::rel_diff(b.raw, oracle::bound_finite(50, 0.05, 0.1, 20)) < 1e-12);
    CHECK(b.clamped == std::min(1.0, b.raw));
}

TEST_CASE("covering bound and limits") {
    auto b = bounds::bound_covering(1.0, 1.0, 1.0, 10, 0.05, 0.1, 100);
    CHECK(oracle::rel_diff(b.raw, oracle::bound_covering(1.0, 1.0, 1.0, 10, 0.05, 0.1, 100)) <
          1e-12);
    CHECK(b.raw == doctest::Approx(1024.0 * prob::binomial_cdf(5.0, {100, 0.1})));

    // huge margin: reduces to the plain binomial tail
    b = bounds::bound_covering(1.0, 1.0, 1e14, 10, 0.05, 0.1, 100);
    CHECK(b.raw == doctest::Approx(prob::binomial_cdf(5.0, {100, 0.1})).epsilon(1e-9));

    // eps = 0 degenerates to the covering factor itself
    b = bounds::bound_covering(1.0, 1.0, 1.0, 10, 0.05, 0.0, 100);
    CHECK(b.raw == doctest::Approx(1024.0));
}

TEST_CASE("comparison bound") {
    auto b = bounds::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, 0.025, 100);
    CHECK(oracle::rel_diff(b.raw,
                           oracle::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, 0.025, 100)) <
          1e-12);
    CHECK(b.raw ==
          doctest::Approx(40.0 * 1024.0 * prob::binomial_cdf(5.0, {100, 0.075})));

    // beta near eps: the tail degenerates toward 1; ceil(1/beta) snaps to 10
    b = bounds::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, 0.1 - 1e-12, 100);
    CHECK(b.raw == doctest::Approx(10.0 * 1024.0 * prob::binomial_cdf(5.0, {100, 1e-12})));
    CHECK(prob::binomial_cdf(5.0, {100, 1e-12}) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(bounds::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, 0.0, 100),
                    std::domain_error);
    CHECK_THROWS_AS(bounds::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, 0.1, 100),
                    std::domain_error);
}

TEST_CASE("covering bound improves on the comparison bound when gamma <= LD") {
    for (std::int64_t n_samples : {1, 5, 20, 50, 100, 250, 500, 1000}) {
        for (double beta : {0.01, 0.025, 0.05, 0.09}) {
            const auto ours = bounds::bound_covering(1.0, 1.0, 1.0, 10, 0.05, 0.1, n_samples);
            const auto theirs =
                bounds::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, beta, n_samples);
            CHECK(ours.raw <= theirs.raw);
            if (ours.raw > 0.0) CHECK(ours.raw < theirs.raw);
        }
    }
}

TEST_CASE("penalties") {
    const auto budget = dist::VariationBudget::linear(0.01);

    // theta-rule radii flatten the penalties to eps - theta
    const auto radii = saa::radii_from_theta(budget, 12, 0.02);
    const auto p = bounds::penalties(budget, 12, radii, 0.1);
    for (double pi : p) CHECK(pi == doctest::Approx(0.1 - 0.02).epsilon(1e-12));

    // stationary: everything stays at eps
    const Vec anyr{1.0, 2.0, 0.0};
    const auto p0 = bounds::penalties(dist::VariationBudget::zero(), 3, anyr, 0.1);
    for (double pi : p0) CHECK(pi == 0.1);

    // clamped to zero once rho/r reaches eps
    const Vec tiny(5, 1e-6);
    const auto pc = bounds::penalties(budget, 5, tiny, 0.1);
    for (double pi : pc) CHECK(pi == 0.0);

    // degenerate radius with positive drift forces the penalty to zero
    const Vec degenerate{0.0, 1.0};
    const auto pd = bounds::penalties(budget, 2, degenerate, 0.1);
    CHECK(pd[0] == 0.0);                      // r = 0, rho(2) > 0
    CHECK(pd[1] == doctest::Approx(0.09));    // rho(1)/r = 0.01

    CHECK_THROWS_AS(bounds::penalties(budget, 3, anyr, 1.5), std::domain_error);
}

TEST_CASE("penalty monotonicity in budget and radii") {
    Rng rng(0xB0B0);
    for (int t = 0; t < 20; ++t) {
        const std::int64_t n = 5 + static_cast<std::int64_t>(rng.next_u64() % 10);
        Vec radii(static_cast<std::size_t>(n));
        for (auto& r : radii) r = rng.uniform01() * 2.0;
        const double eps = 0.05 + 0.3 * rng.uniform01();
        const double c = 0.002 + 0.01 * rng.uniform01();
        const auto lo = bounds::penalties(dist::VariationBudget::linear(c), n, radii, eps);
        const auto hi = bounds::penalties(dist::VariationBudget::linear(2.0 * c), n, radii, eps);
        for (std::size_t i = 0; i < lo.size(); ++i) CHECK(hi[i] <= lo[i]); // antitone in rho

        Vec wider(radii);
        for (auto& r : wider) r *= 1.5;
        const auto pw = bounds::penalties(dist::VariationBudget::linear(c), n, wider, eps);
        const auto pr = bounds::penalties(dist::VariationBudget::linear(c), n, radii, eps);
        for (std::size_t i = 0; i < pw.size(); ++i) CHECK(pw[i] >= pr[i]); // monotone in r
    }
}

TEST_CASE("drift bounds reduce bit-identically to stationary ones") {
    Rng rng(0xB0B1);
    for (int t = 0; t < 100; ++t) {
        const std::uint64_t card = 1 + rng.next_u64() % 200;
        const double eps = rng.uniform01();
        const double alpha = rng.uniform01();
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_u64() % 400);
        const Vec p(static_cast<std::size_t>(n), eps);

        const auto stationary = bounds::bound_finite(card, alpha, eps, n);
        const auto drift = bounds::bound_finite_drift(card, alpha, n, p);
        CHECK(drift.raw == stationary.raw);
        CHECK(drift.clamped == stationary.clamped);

        const double L = 0.1 + rng.uniform01(), D = 0.1 + rng.uniform01();
        const double gamma = 0.05 + rng.uniform01();
        const std::int64_t dim = 1 + static_cast<std::int64_t>(rng.next_u64() % 12);
        const auto cov = bounds::bound_covering(L, D, gamma, dim, alpha, eps, n);
        const auto covd = bounds::bound_covering_drift(L, D, gamma, dim, alpha, n, p);
        CHECK(covd.raw == cov.raw);
    }
}

TEST_CASE("theta-rule drift bound equals the shifted binomial bound") {
    const auto budget = dist::VariationBudget::linear(0.004);
    const std::int64_t n = 20;
    const auto radii = saa::radii_from_theta(budget, n, 0.02);
    const auto p = bounds::penalties(budget, n, radii, 0.1);
    const auto drift = bounds::bound_finite_drift(50, 0.05, n, p);
    const auto direct = bounds::bound_finite(50, 0.05, 0.1 - 0.02, n);
    CHECK(drift.raw == doctest::Approx(direct.raw).epsilon(1e-12));

    CHECK(oracle::rel_diff(drift.raw,
                           oracle::bound_finite_drift(50, 0.05, n, std::vector<double>(
                                                                       p.begin(), p.end()))) <
          1e-12);
}

TEST_CASE("all bounds match the 50-digit oracle on a parameter grid") {
    Rng rng(0xB0B2);
    for (int t = 0; t < 50; ++t) {
        const std::uint64_t card = 1 + rng.next_u64() % 100;
        const double eps = 0.02 + 0.3 * rng.uniform01();
        const double alpha = eps * rng.uniform01();
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_u64() % 600);
        const double L = 0.2 + rng.uniform01(), D = 0.2 + rng.uniform01();
        const double gamma = 0.05 + 0.5 * rng.uniform01();
        const std::int64_t dim = 1 + static_cast<std::int64_t>(rng.next_u64() % 10);
        const double beta = eps * (0.05 + 0.9 * rng.uniform01());

        CHECK(oracle::rel_diff(bounds::bound_finite(card, alpha, eps, n).raw,
                               oracle::bound_finite(card, alpha, eps, n)) < 1e-10);
        CHECK(oracle::rel_diff(bounds::bound_covering(L, D, gamma, dim, alpha, eps, n).raw,
                               oracle::bound_covering(L, D, gamma, dim, alpha, eps, n)) <
              1e-10);
        CHECK(oracle::rel_diff(
                  bounds::bound_luedtke(L, D, gamma, dim, alpha, eps, beta, n).raw,
                  oracle::bound_luedtke(L, D, gamma, dim, alpha, eps, beta, n)) < 1e-10);

        std::vector<double> p(static_cast<std::size_t>(n));
        for (auto& v : p) v = eps * rng.uniform01();
        CHECK(oracle::rel_diff(bounds::bound_finite_drift(card, alpha, n, p).raw,
                               oracle::bound_finite_drift(card, alpha, n, p)) < 1e-10);
        CHECK(oracle::rel_diff(
                  bounds::bound_covering_drift(L, D, gamma, dim, alpha, n, p).raw,
                  oracle::bound_covering_drift(L, D, gamma, dim, alpha, n, p)) < 1e-10);
    }
}

TEST_CASE("beta grid minimizer never loses to the half-gap default") {
    for (std::int64_t n : {50, 200, 800}) {
        const double best =
            bounds::best_beta_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, n, 499);
        const auto at_best = bounds::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, best, n);
        const auto at_default =
            bounds::bound_luedtke(1.0, 1.0, 1.0, 10, 0.05, 0.1, 0.025, n);
        CHECK(at_best.log10_raw <= at_default.log10_raw + 1e-12);
    }
}
