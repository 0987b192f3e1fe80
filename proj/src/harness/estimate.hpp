#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dist/sequence.hpp"
#include "harness/wilson.hpp"
#include "saa/constraint.hpp"
#include "saa/engine.hpp"

namespace ccsaa::mc {

enum class RadiiRule { zero, theta, explicit_list };

struct RadiiSpec {
    RadiiRule rule = RadiiRule::zero;
    double theta = 0.0; // theta rule
    Vec values;         // explicit rule
};

struct TrialConfig {
    saa::ProblemInstance instance;
    dist::DistributionSequence sequence;
    RadiiSpec radii;
    std::int64_t trials = 10'000;
    std::uint64_t master_seed = 0;
    int jobs = 1;
    saa::SupportMode support_mode = saa::SupportMode::ball_only;
    saa::RobustOptions robust;
};

struct BoundCheck {
    std::string name;
    double raw = 0.0;
    double clamped = 0.0;
    bool pass = true;
};

struct EstimateResult {
    std::int64_t trials = 0;
    std::int64_t bad_trials = 0; // trials where a feasible point violates the target constraint
    double frequency = 0.0;
    WilsonInterval interval;
    std::vector<BoundCheck> bounds;
    bool all_pass = true;
    bool approximate = false; // some robust suprema were sampled, not exact

    std::int64_t sample_count = 0;
    Vec radii_used;
    Vec penalties_used;
    std::vector<double> true_violations; // per decision point, under the target
    std::vector<std::size_t> violating_points;
};

// Monte Carlo estimate of the probability that the robust feasible set
// contains a point whose true target violation exceeds epsilon. Trials are
// independently seeded from (master_seed, trial); the result is bit-identical
// for any number of jobs. Each trial flags the set-inclusion event, checking
// every feasible decision point, not just a solver pick.
EstimateResult estimate_infeasibility(const TrialConfig& config);

// Drift description expandable to any length: needed when the sample size is
// computed rather than given.
struct SequenceTemplate {
    dist::DistributionSpec start;
    Vec drift_per_step;
    Norm norm = Norm::l2;
};

struct SampleSizeCheckReport {
    std::int64_t sample_size = 0;
    double delta = 0.0;
    double theta = 0.0;
    EstimateResult estimate;
    bool pass = false; // frequency <= delta + 4 Wilson half-widths
};

// Sets N from min_sample_size, builds the environment at that length, applies
// the theta radius rule and verifies the confidence guarantee empirically.
SampleSizeCheckReport verify_sample_size_guarantee(const saa::ProblemInstance& instance,
                                                   double delta, double theta,
                                                   const SequenceTemplate& environment,
                                                   std::int64_t trials,
                                                   std::uint64_t master_seed, int jobs = 1);

} // namespace ccsaa::mc
