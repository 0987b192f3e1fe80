#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dist/sequence.hpp"
#include "harness/estimate.hpp"
#include "saa/constraint.hpp"

namespace ccsaa::io {

using json = nlohmann::json;

// Parsers throw validation_error carrying the offending field path.
Norm parse_norm(const json& j, const std::string& path);
dist::SupportSet parse_support(const json& j, const std::string& path, std::size_t dim_hint);
dist::DistributionSpec parse_distribution(const json& j, const std::string& path);
dist::VariationBudget parse_budget(const json& j, const std::string& path);
saa::DecisionSet parse_decision_set(const json& j, const std::string& path);
saa::ConstraintFunction parse_constraint(const json& j, const std::string& path);
saa::RiskConfig parse_risk(const json& j, const std::string& path);
saa::ProblemInstance parse_instance(const json& j, const std::string& path);
mc::RadiiSpec parse_radii(const json& j, const std::string& path);

// A sequence section: either explicit specs + budget, or a drift template
// whose length may be resolved later (e.g. from a computed sample size).
struct SequenceSection {
    std::optional<dist::DistributionSequence> sequence;
    std::optional<mc::SequenceTemplate> drift_template;
    std::optional<std::int64_t> template_length;
};
SequenceSection parse_sequence_section(const json& j, const std::string& path);

json distribution_to_json(const dist::DistributionSpec& spec);
json budget_to_json(const dist::VariationBudget& budget);
json sequence_to_json(const dist::DistributionSequence& seq);
dist::DistributionSequence sequence_from_json(const json& j);

} // namespace ccsaa::io

namespace ccsaa::jobs {

struct JobOutput {
    int exit_code = 0; // 0 ok, 2 bound-check failure (validation/internal -> exceptions)
    std::string summary;
    std::string resolved_config;
    std::vector<std::string> files;
};

// subcommand: "bounds" | "simulate" | "sample-size" | "sweep"
JobOutput run_job(const std::string& subcommand, const std::string& config_text,
                  const std::string& out_dir, std::optional<std::uint64_t> seed_override,
                  int jobs);

} // namespace ccsaa::jobs
