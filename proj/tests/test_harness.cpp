#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "harness/estimate.hpp"
#include "harness/sweep.hpp"
#include "oracles.hpp"
#include "prob/tail_probabilities.hpp"

using namespace ccsaa;
using dist::DistributionSpec;
using saa::ConstraintFunction;
using saa::DecisionSet;

namespace {

// One scalar decision x = 1 against the constraint xi > offset, sampled from
// a drifting or stationary uniform/gaussian stream.
mc::TrialConfig single_point_config(double offset, double eps, double alpha,
                                    std::int64_t n_samples, std::int64_t trials,
                                    std::uint64_t seed) {
    mc::TrialConfig cfg;
    cfg.instance.decision_set = DecisionSet::finite({{1.0}});
    cfg.instance.constraint = ConstraintFunction::bi_affine(offset);
    cfg.instance.risk.epsilon = eps;
    cfg.instance.risk.alpha = alpha;
    cfg.sequence = dist::make_drifting_sequence(DistributionSpec::uniform({0.0}, {1.0}),
                                                {0.0}, n_samples, Norm::l2);
    cfg.trials = trials;
    cfg.master_seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("wilson interval sanity") {
    const auto w = mc::wilson95(10, 100);
    // standard Wilson numbers for 10/100
    CHECK(w.low == doctest::Approx(0.0552).epsilon(2e-3));
    CHECK(w.high == doctest::Approx(0.1744).epsilon(2e-3));
    CHECK(w.low <= 0.1);
    CHECK(0.1 <= w.high);
    const auto zero = mc::wilson95(0, 50);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
}

TEST_CASE("single-point frequency matches the binomial identity") {
    // v(x) = P{xi > 0.8} = 0.2 > eps = 0.1; feasibility needs <= floor(alpha N)
    // violations, so the bad-trial probability is Phi(2; 0.2, 40).
    auto cfg = single_point_config(0.8, 0.1, 0.05, 40, 20000, 0xFACE01);
    const auto est = mc::estimate_infeasibility(cfg);
    CHECK(est.true_violations[0] == doctest::Approx(0.2).epsilon(1e-12));
    const double want = prob::binomial_cdf(2.0, {40, 0.2});
    CHECK(std::abs(est.frequency - want) <= 4.0 * est.interval.halfwidth);
    CHECK(est.all_pass);
    CHECK(est.interval.low <= est.frequency);
    CHECK(est.frequency <= est.interval.high);
}

TEST_CASE("scenario special case: alpha=0 gives the all-satisfied probability") {
    auto cfg = single_point_config(0.7, 0.1, 0.0, 25, 20000, 0xFACE02);
    const auto est = mc::estimate_infeasibility(cfg);
    // v = 0.3; feasible iff zero violations among 25 samples
    const double want = std::pow(0.7, 25);
    CHECK(std::abs(est.frequency - want) <= 4.0 * est.interval.halfwidth + 1e-12);
}

TEST_CASE("vacuous risk level never flags a trial") {
    auto cfg = single_point_config(0.8, 1.0, 0.05, 20, 500, 0xFACE03);
    const auto est = mc::estimate_infeasibility(cfg);
    CHECK(est.bad_trials == 0); // no point can violate eps = 1
}

TEST_CASE("bit-identical results for any worker count") {
    auto cfg = single_point_config(0.8, 0.1, 0.05, 40, 4000, 0xFACE04);
    cfg.jobs = 1;
    const auto a = mc::estimate_infeasibility(cfg);
    cfg.jobs = 3;
    const auto b = mc::estimate_infeasibility(cfg);
    cfg.jobs = 8;
    const auto c = mc::estimate_infeasibility(cfg);
    CHECK(a.bad_trials == b.bad_trials);
    CHECK(a.bad_trials == c.bad_trials);
    CHECK(a.frequency == b.frequency);

    cfg.master_seed = 0xFACE05;
    const auto d = mc::estimate_infeasibility(cfg);
    CHECK(d.bad_trials != a.bad_trials); // different seed actually changes draws
}

TEST_CASE("zero drift with theta radii coincides with the stationary run") {
    // rho == 0 makes the theta-rule radii all zero, so the robust path must
    // reproduce the classic one bit for bit, bounds included.
    auto stationary = single_point_config(0.8, 0.1, 0.05, 30, 3000, 0xFACE06);
    auto robust = stationary;
    robust.radii = mc::RadiiSpec{mc::RadiiRule::theta, 0.02, {}};

    const auto a = mc::estimate_infeasibility(stationary);
    const auto b = mc::estimate_infeasibility(robust);
    CHECK(a.bad_trials == b.bad_trials);
    CHECK(a.frequency == b.frequency);
    REQUIRE(b.bounds.size() == 2); // drift bound plus its stationary reduction
    CHECK(a.bounds[0].raw == b.bounds[0].raw);
    CHECK(b.bounds[0].raw == b.bounds[1].raw);
}

TEST_CASE("drifting environment stays under the drift bound") {
    mc::TrialConfig cfg;
    cfg.instance.decision_set =
        DecisionSet::finite({{0.6}, {0.8}, {1.0}, {1.2}, {1.4}});
    cfg.instance.constraint = ConstraintFunction::bi_affine(1.0);
    cfg.instance.risk.epsilon = 0.15;
    cfg.instance.risk.alpha = 0.05;
    cfg.sequence = dist::make_drifting_sequence(DistributionSpec::gaussian({0.6}, 0.5),
                                                {0.004}, 60, Norm::l2);
    cfg.radii = mc::RadiiSpec{mc::RadiiRule::theta, 0.05, {}};
    cfg.trials = 4000;
    cfg.master_seed = 0xFACE07;
    cfg.jobs = 2;

    const auto est = mc::estimate_infeasibility(cfg);
    CHECK(est.all_pass);
    REQUIRE(!est.penalties_used.empty());
    for (double p : est.penalties_used)
        CHECK(p == doctest::Approx(0.15 - 0.05).epsilon(1e-12));
    // radii decrease with recency
    for (std::size_t i = 0; i + 1 < est.radii_used.size(); ++i)
        CHECK(est.radii_used[i] >= est.radii_used[i + 1]);
}

TEST_CASE("sweep rows are ordered and consistent") {
    const auto res = mc::sweep_bound_comparison(10, 0.1, 0.05, 1.0, 0.025, 1, 200);
    REQUIRE(res.rows.size() == 200);
    for (const auto& row : res.rows) {
        CHECK(row.covering_raw <= row.luedtke_raw);
        CHECK(row.ratio >= 1.0);
    }
    CHECK(res.max_ratio >= res.rows.front().ratio);
    // the covering curve is not below 1 this early at these parameters
    CHECK(res.first_n_below_one == 0);

    const auto wide = mc::sweep_bound_comparison(10, 0.1, 0.05, 1.0, 0.025, 1, 1200);
    CHECK(wide.first_n_below_one > 200);
    // verify the crossing against the 50-digit oracle
    const auto n0 = wide.first_n_below_one;
    CHECK(oracle::bound_covering(1.0, 1.0, 1.0, 10, 0.05, 0.1, n0) < 1);
    CHECK(oracle::bound_covering(1.0, 1.0, 1.0, 10, 0.05, 0.1, n0 - 1) >= 1);
}

TEST_CASE("sample size guarantee verification") {
    saa::ProblemInstance inst;
    inst.decision_set = DecisionSet::finite({{0.5}, {0.8}, {1.0}, {1.3}, {1.6}});
    inst.constraint = ConstraintFunction::bi_affine(1.0);
    inst.risk.epsilon = 0.2;
    inst.risk.alpha = 0.05;

    mc::SequenceTemplate env;
    env.start = DistributionSpec::gaussian({0.7}, 0.6);
    env.drift_per_step = {0.002};
    env.norm = Norm::l2;

    const auto report =
        mc::verify_sample_size_guarantee(inst, 0.3, 0.05, env, 1500, 0xFACE08, 2);
    CHECK(report.sample_size ==
          prob::min_sample_size(5, 0.3, 0.2, 0.05, 0.05));
    CHECK(report.pass);
    CHECK(report.estimate.frequency <= 0.3);
}
