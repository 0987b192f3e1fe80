#include "harness/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "bounds/infeasibility_bounds.hpp"
#include "common/errors.hpp"
#include "common/rng.hpp"
#include "prob/tail_probabilities.hpp"

namespace ccsaa::mc {

namespace {

Vec resolve_radii(const RadiiSpec& spec, const dist::VariationBudget& budget,
                  std::int64_t n_samples) {
    switch (spec.rule) {
        case RadiiRule::zero: return Vec(static_cast<std::size_t>(n_samples), 0.0);
        case RadiiRule::theta: return saa::radii_from_theta(budget, n_samples, spec.theta);
        case RadiiRule::explicit_list:
            if (static_cast<std::int64_t>(spec.values.size()) != n_samples)
                throw validation_error("radii",
                                       "explicit radii length must equal the sample count");
            for (double r : spec.values)
                if (!(r >= 0.0))
                    throw validation_error("radii", "radii must be nonnegative");
            return spec.values;
    }
    return {};
}

// One trial: draw the batch, then flag whether any decision point with true
// target violation above epsilon slips into the feasible set.
bool run_trial(const TrialConfig& cfg, const Vec& radii,
               const std::vector<std::size_t>& violating, std::int64_t feasible_limit,
               std::uint64_t trial_seed, saa::SampleBatch& batch, bool& approximate) {
    dist::draw_sequence_into(cfg.sequence, trial_seed, batch);
    batch.radii = radii;
    batch.support_mode = cfg.support_mode;

    const auto& g = cfg.instance.constraint;
    const double gamma = cfg.instance.risk.gamma;
    for (std::size_t idx : violating) {
        const auto& x = cfg.instance.decision_set.points[idx];
        std::int64_t count = 0;
        bool over = false;
        for (std::size_t i = 0; i < batch.count; ++i) {
            saa::SupResult s;
            try {
                s = saa::robust_sup(x, batch.point(i), batch.radii[i], batch.norm,
                                    batch.support_mode, batch.support, g, cfg.robust);
            } catch (const empty_intersection_error& e) {
                throw empty_intersection_error(std::string(e.what()) + " (sample index " +
                                                   std::to_string(i + 1) + ")",
                                               static_cast<long long>(i));
            }
            approximate = approximate || !s.exact;
            if (s.value + gamma > 0.0) {
                if (++count > feasible_limit) {
                    over = true;
                    break;
                }
            }
        }
        if (!over) return true; // violating point is feasible: bad trial
    }
    return false;
}

} // namespace

EstimateResult estimate_infeasibility(const TrialConfig& cfg) {
    cfg.instance.validate();
    if (cfg.instance.decision_set.kind != saa::DecisionSetKind::finite)
        throw validation_error("instance.decision_set",
                               "estimate_infeasibility requires a finite decision set");
    if (cfg.trials < 1) throw validation_error("trials", "must be >= 1");
    const std::int64_t n = cfg.sequence.sample_count();
    const auto& points = cfg.instance.decision_set.points;
    if (cfg.instance.constraint.kind == saa::ConstraintKind::bi_affine &&
        points.front().size() != cfg.sequence.specs.front().dim())
        throw validation_error("instance",
                               "bi-affine constraint needs matching decision and sample "
                               "dimensions");

    EstimateResult out;
    out.trials = cfg.trials;
    out.sample_count = n;
    out.radii_used = resolve_radii(cfg.radii, cfg.sequence.budget, n);

    const double eps = cfg.instance.risk.epsilon;
    const double alpha = cfg.instance.risk.alpha;

    // True target violations, computed once: the target distribution is fixed.
    out.true_violations.reserve(points.size());
    for (const auto& x : points) {
        const auto tv =
            saa::true_violation_probability(cfg.instance.constraint, x, cfg.sequence.target());
        if (!tv.exact && tv.std_error > 1e-3)
            throw validation_error("instance",
                                   "true violation probability too noisy (std error above "
                                   "1e-3)");
        out.true_violations.push_back(tv.value);
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        if (out.true_violations[i] > eps) out.violating_points.push_back(i);

    if (cfg.instance.constraint.kind == saa::ConstraintKind::black_box &&
        cfg.instance.constraint.lipschitz) {
        saa::SampleBatch probe = dist::draw_sequence(cfg.sequence, cfg.master_seed);
        std::vector<Vec> xs(points.begin(),
                            points.begin() + std::min<std::size_t>(points.size(), 8));
        std::vector<Vec> xis;
        for (std::size_t i = 0; i < std::min<std::size_t>(probe.count, 16); ++i) {
            auto p = probe.point(i);
            xis.emplace_back(p.begin(), p.end());
        }
        saa::check_declared_lipschitz(cfg.instance.constraint, xs, xis);
    }

    // Theoretical bounds for this configuration.
    out.penalties_used = bounds::penalties(cfg.sequence.budget, n, out.radii_used, eps);
    const auto card = static_cast<std::uint64_t>(points.size());
    const auto drift_bound = bounds::bound_finite_drift(card, alpha, n, out.penalties_used);
    out.bounds.push_back({"finite_drift", drift_bound.raw, drift_bound.clamped, true});
    const bool stationary_reduction =
        std::all_of(out.penalties_used.begin(), out.penalties_used.end(),
                    [&](double p) { return p == eps; });
    if (stationary_reduction) {
        const auto fin = bounds::bound_finite(card, alpha, eps, n);
        out.bounds.push_back({"finite", fin.raw, fin.clamped, true});
    }

    // alpha * N as an exact rational threshold on violation counts.
    const std::int64_t feasible_limit = max_count_within(n, alpha);

    const int jobs = std::max(cfg.jobs, 1);
    std::vector<std::int64_t> bad_per_chunk(static_cast<std::size_t>(jobs), 0);
    std::vector<unsigned char> approx_per_chunk(static_cast<std::size_t>(jobs), 0);
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&](int chunk) {
        const std::int64_t lo = cfg.trials * chunk / jobs;
        const std::int64_t hi = cfg.trials * (chunk + 1) / jobs;
        saa::SampleBatch batch;
        std::int64_t bad = 0;
        bool approx = false;
        try {
            for (std::int64_t t = lo; t < hi && !failed.load(std::memory_order_relaxed); ++t) {
                const std::uint64_t trial_seed =
                    mix_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
                if (run_trial(cfg, out.radii_used, out.violating_points, feasible_limit,
                              trial_seed, batch, approx))
                    ++bad;
            }
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            failed.store(true);
            if (failure.empty()) failure = e.what();
        }
        bad_per_chunk[static_cast<std::size_t>(chunk)] = bad;
        approx_per_chunk[static_cast<std::size_t>(chunk)] = approx ? 1 : 0;
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int c = 0; c < jobs; ++c) threads.emplace_back(worker, c);
        for (auto& th : threads) th.join();
    }
    if (failed.load()) throw std::runtime_error("trial aborted: " + failure);

    for (int c = 0; c < jobs; ++c) {
        out.bad_trials += bad_per_chunk[static_cast<std::size_t>(c)];
        out.approximate = out.approximate || approx_per_chunk[static_cast<std::size_t>(c)];
    }
    out.frequency = static_cast<double>(out.bad_trials) / static_cast<double>(out.trials);
    out.interval = wilson95(out.bad_trials, out.trials);

    for (auto& b : out.bounds) {
        b.pass = out.frequency <= std::min(1.0, b.raw) + 4.0 * out.interval.halfwidth;
        out.all_pass = out.all_pass && b.pass;
    }
    return out;
}

SampleSizeCheckReport verify_sample_size_guarantee(const saa::ProblemInstance& instance,
                                                   double delta, double theta,
                                                   const SequenceTemplate& environment,
                                                   std::int64_t trials,
                                                   std::uint64_t master_seed, int jobs) {
    instance.validate();
    if (instance.decision_set.kind != saa::DecisionSetKind::finite)
        throw validation_error("instance.decision_set", "requires a finite decision set");
    const auto card = static_cast<std::uint64_t>(instance.decision_set.points.size());
    const std::int64_t n =
        prob::min_sample_size(card, delta, instance.risk.epsilon, instance.risk.alpha, theta);

    TrialConfig cfg;
    cfg.instance = instance;
    cfg.sequence = dist::make_drifting_sequence(environment.start, environment.drift_per_step,
                                                n, environment.norm);
    cfg.radii = RadiiSpec{RadiiRule::theta, theta, {}};
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.jobs = jobs;

    SampleSizeCheckReport report;
    report.sample_size = n;
    report.delta = delta;
    report.theta = theta;
    report.estimate = estimate_infeasibility(cfg);
    report.pass =
        report.estimate.frequency <= delta + 4.0 * report.estimate.interval.halfwidth;
    return report;
}

} // namespace ccsaa::mc
