#include "io/config.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bounds/infeasibility_bounds.hpp"
#include "common/errors.hpp"
#include "harness/sweep.hpp"
#include "io/csv.hpp"
#include "prob/tail_probabilities.hpp"

namespace ccsaa::io {

namespace {

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw validation_error(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw validation_error(path + "." + key, "required field missing");
    return *it;
}

double number_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number())
        throw validation_error(path + "." + key, "expected a number");
    return v.get<double>();
}

std::int64_t integer_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer())
        throw validation_error(path + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

std::string string_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string())
        throw validation_error(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double number_or(const json& j, const char* key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return number_at(j, key, "");
}

std::optional<double> opt_number(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) return std::nullopt;
    return number_at(j, key, path);
}

Vec vec_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_array() || v.empty())
        throw validation_error(path + "." + key, "expected a nonempty array of numbers");
    Vec out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            throw validation_error(path + "." + key, "expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

Norm parse_norm(const json& j, const std::string& path) {
    if (!j.is_string())
        throw validation_error(path, "expected one of \"l1\", \"l2\", \"linf\"");
    const auto s = j.get<std::string>();
    if (s == "l1") return Norm::l1;
    if (s == "l2") return Norm::l2;
    if (s == "linf") return Norm::linf;
    throw validation_error(path, "unknown norm \"" + s + "\"");
}

dist::SupportSet parse_support(const json& j, const std::string& path, std::size_t dim_hint) {
    const auto kind = string_at(j, "kind", path);
    if (kind == "full_space") {
        std::size_t d = dim_hint;
        if (j.contains("dim")) d = static_cast<std::size_t>(integer_at(j, "dim", path));
        if (d == 0) throw validation_error(path + ".dim", "dimension required");
        return dist::SupportSet::full(d);
    }
    if (kind == "box")
        return dist::SupportSet::box(vec_at(j, "lower", path), vec_at(j, "upper", path));
    throw validation_error(path + ".kind", "expected \"box\" or \"full_space\"");
}

dist::DistributionSpec parse_distribution(const json& j, const std::string& path) {
    const auto family = string_at(j, "family", path);
    try {
        if (family == "dirac") {
            Vec loc = vec_at(j, "location", path);
            dist::SupportSet support = j.contains("support")
                                           ? parse_support(j["support"], path + ".support",
                                                           loc.size())
                                           : dist::SupportSet::full(loc.size());
            return dist::DistributionSpec::dirac(std::move(loc), std::move(support));
        }
        if (family == "uniform_box") {
            Vec lo = vec_at(j, "lower", path);
            Vec hi = vec_at(j, "upper", path);
            dist::SupportSet support = j.contains("support")
                                           ? parse_support(j["support"], path + ".support",
                                                           lo.size())
                                           : dist::SupportSet::full(lo.size());
            return dist::DistributionSpec::uniform(std::move(lo), std::move(hi),
                                                   std::move(support));
        }
        if (family == "gaussian_isotropic") {
            Vec mean = vec_at(j, "mean", path);
            return dist::DistributionSpec::gaussian(std::move(mean),
                                                    number_at(j, "stddev", path));
        }
        if (family == "discrete_weighted") {
            const json& atoms_json = require(j, "atoms", path);
            if (!atoms_json.is_array() || atoms_json.empty())
                throw validation_error(path + ".atoms", "expected a nonempty array of points");
            std::vector<Vec> atoms;
            for (const auto& a : atoms_json) {
                if (!a.is_array())
                    throw validation_error(path + ".atoms", "expected arrays of numbers");
                atoms.emplace_back(a.begin(), a.end());
            }
            Vec weights = vec_at(j, "weights", path);
            dist::SupportSet support =
                j.contains("support")
                    ? parse_support(j["support"], path + ".support", atoms.front().size())
                    : dist::SupportSet::full(atoms.front().size());
            return dist::DistributionSpec::discrete(std::move(atoms), std::move(weights),
                                                    std::move(support));
        }
    } catch (const std::domain_error& e) {
        throw validation_error(path, e.what());
    }
    throw validation_error(path + ".family", "unknown family \"" + family + "\"");
}

dist::VariationBudget parse_budget(const json& j, const std::string& path) {
    const auto form = string_at(j, "form", path);
    try {
        if (form == "linear") return dist::VariationBudget::linear(number_at(j, "rate", path));
        if (form == "step") {
            const json& jumps = require(j, "jumps", path);
            if (!jumps.is_array())
                throw validation_error(path + ".jumps", "expected an array");
            std::vector<dist::VariationBudget::Jump> parsed;
            for (const auto& e : jumps)
                parsed.push_back({integer_at(e, "at", path + ".jumps"),
                                  number_at(e, "size", path + ".jumps")});
            return dist::VariationBudget::step(std::move(parsed));
        }
        if (form == "tabulated") {
            const json& table = require(j, "table", path);
            if (!table.is_array())
                throw validation_error(path + ".table", "expected an array of [k, value] pairs");
            std::vector<dist::VariationBudget::Knot> knots;
            for (const auto& e : table) {
                if (!e.is_array() || e.size() != 2)
                    throw validation_error(path + ".table", "expected [k, value] pairs");
                knots.push_back({e[0].get<std::int64_t>(), e[1].get<double>()});
            }
            return dist::VariationBudget::tabulated(std::move(knots));
        }
    } catch (const std::domain_error& e) {
        throw validation_error(path, e.what());
    }
    throw validation_error(path + ".form",
                           "expected \"linear\", \"step\" or \"tabulated\"");
}

saa::DecisionSet parse_decision_set(const json& j, const std::string& path) {
    const auto kind = string_at(j, "kind", path);
    try {
        if (kind == "finite") {
            const json& pts = require(j, "points", path);
            if (!pts.is_array() || pts.empty())
                throw validation_error(path + ".points", "expected a nonempty array of points");
            std::vector<Vec> points;
            for (const auto& p : pts) {
                if (!p.is_array())
                    throw validation_error(path + ".points", "expected arrays of numbers");
                points.emplace_back(p.begin(), p.end());
            }
            return saa::DecisionSet::finite(std::move(points));
        }
        if (kind == "box")
            return saa::DecisionSet::box(vec_at(j, "lower", path), vec_at(j, "upper", path));
    } catch (const std::domain_error& e) {
        throw validation_error(path, e.what());
    }
    throw validation_error(path + ".kind", "expected \"finite\" or \"box\"");
}

saa::ConstraintFunction parse_constraint(const json& j, const std::string& path) {
    const auto kind = string_at(j, "kind", path);
    if (kind == "bi_affine")
        return saa::ConstraintFunction::bi_affine(number_at(j, "offset", path));
    if (kind == "black_box")
        throw validation_error(path + ".kind",
                               "black_box constraints are a library-level feature and cannot "
                               "be configured from JSON");
    throw validation_error(path + ".kind", "expected \"bi_affine\"");
}

saa::RiskConfig parse_risk(const json& j, const std::string& path) {
    saa::RiskConfig r;
    r.epsilon = number_at(j, "epsilon", path);
    r.alpha = number_at(j, "alpha", path);
    r.gamma = number_or(j, "gamma", 0.0);
    r.delta = opt_number(j, "delta", path);
    r.theta = opt_number(j, "theta", path);
    r.lipschitz = opt_number(j, "lipschitz", path);
    r.diameter = opt_number(j, "diameter", path);
    if (j.contains("dim")) r.dim_n = integer_at(j, "dim", path);
    try {
        r.validate();
    } catch (const std::domain_error& e) {
        throw validation_error(path, e.what());
    }
    return r;
}

saa::ProblemInstance parse_instance(const json& j, const std::string& path) {
    saa::ProblemInstance inst;
    inst.decision_set = parse_decision_set(require(j, "decision_set", path),
                                           path + ".decision_set");
    inst.constraint = parse_constraint(require(j, "constraint", path), path + ".constraint");
    if (j.contains("objective")) inst.objective = vec_at(j, "objective", path);
    inst.risk = parse_risk(require(j, "risk", path), path + ".risk");
    try {
        inst.validate();
    } catch (const std::domain_error& e) {
        throw validation_error(path, e.what());
    }
    return inst;
}

mc::RadiiSpec parse_radii(const json& j, const std::string& path) {
    mc::RadiiSpec spec;
    const auto rule = string_at(j, "rule", path);
    if (rule == "zero") {
        spec.rule = mc::RadiiRule::zero;
    } else if (rule == "theta") {
        spec.rule = mc::RadiiRule::theta;
        spec.theta = number_at(j, "theta", path);
        if (!(spec.theta > 0.0))
            throw validation_error(path + ".theta", "theta must be > 0");
    } else if (rule == "explicit") {
        spec.rule = mc::RadiiRule::explicit_list;
        spec.values = vec_at(j, "values", path);
    } else {
        throw validation_error(path + ".rule", "expected \"zero\", \"theta\" or \"explicit\"");
    }
    return spec;
}

SequenceSection parse_sequence_section(const json& j, const std::string& path) {
    SequenceSection out;
    const Norm norm = j.contains("norm") ? parse_norm(j["norm"], path + ".norm") : Norm::l2;

    if (j.contains("template")) {
        const json& t = j["template"];
        mc::SequenceTemplate tmpl;
        tmpl.start = parse_distribution(require(t, "start", path + ".template"),
                                        path + ".template.start");
        tmpl.drift_per_step = vec_at(t, "drift", path + ".template");
        tmpl.norm = norm;
        if (tmpl.drift_per_step.size() != tmpl.start.dim())
            throw validation_error(path + ".template.drift",
                                   "drift dimension must match the start distribution");
        out.drift_template = std::move(tmpl);
        if (t.contains("length"))
            out.template_length = integer_at(t, "length", path + ".template");
        if (out.template_length) {
            try {
                out.sequence = dist::make_drifting_sequence(out.drift_template->start,
                                                            out.drift_template->drift_per_step,
                                                            *out.template_length, norm);
            } catch (const std::domain_error& e) {
                throw validation_error(path + ".template", e.what());
            }
        }
        return out;
    }

    if (j.contains("specs")) {
        const json& specs_json = j["specs"];
        if (!specs_json.is_array() || specs_json.size() < 2)
            throw validation_error(path + ".specs",
                                   "expected at least two distributions (samples + target)");
        std::vector<dist::DistributionSpec> specs;
        for (std::size_t i = 0; i < specs_json.size(); ++i)
            specs.push_back(parse_distribution(specs_json[i],
                                               path + ".specs[" + std::to_string(i) + "]"));
        auto budget = parse_budget(require(j, "budget", path), path + ".budget");
        try {
            out.sequence = dist::make_sequence(std::move(specs), std::move(budget), norm);
        } catch (const std::domain_error& e) {
            throw validation_error(path, e.what());
        }
        return out;
    }

    throw validation_error(path, "expected either \"specs\" + \"budget\" or \"template\"");
}

json distribution_to_json(const dist::DistributionSpec& spec) {
    json j;
    j["family"] = family_name(spec.family);
    switch (spec.family) {
        case dist::Family::dirac: j["location"] = spec.location; break;
        case dist::Family::uniform_box:
            j["lower"] = spec.lower;
            j["upper"] = spec.upper;
            break;
        case dist::Family::gaussian_isotropic:
            j["mean"] = spec.location;
            j["stddev"] = spec.stddev;
            break;
        case dist::Family::discrete_weighted:
            j["atoms"] = spec.atoms;
            j["weights"] = spec.weights;
            break;
    }
    if (spec.support.kind == dist::SupportKind::box) {
        j["support"] = {{"kind", "box"},
                        {"lower", spec.support.lower},
                        {"upper", spec.support.upper}};
    }
    return j;
}

json budget_to_json(const dist::VariationBudget& budget) {
    json j;
    switch (budget.form) {
        case dist::BudgetForm::linear:
            j["form"] = "linear";
            j["rate"] = budget.rate;
            break;
        case dist::BudgetForm::step: {
            j["form"] = "step";
            json jumps = json::array();
            for (const auto& jm : budget.jumps)
                jumps.push_back({{"at", jm.at}, {"size", jm.size}});
            j["jumps"] = std::move(jumps);
            break;
        }
        case dist::BudgetForm::tabulated: {
            j["form"] = "tabulated";
            json table = json::array();
            for (const auto& k : budget.table) table.push_back({k.k, k.value});
            j["table"] = std::move(table);
            break;
        }
    }
    return j;
}

json sequence_to_json(const dist::DistributionSequence& seq) {
    json j;
    j["norm"] = norm_name(seq.norm);
    j["budget"] = budget_to_json(seq.budget);
    json specs = json::array();
    for (const auto& s : seq.specs) specs.push_back(distribution_to_json(s));
    j["specs"] = std::move(specs);
    return j;
}

dist::DistributionSequence sequence_from_json(const json& j) {
    auto section = parse_sequence_section(j, "sequence");
    if (!section.sequence)
        throw validation_error("sequence", "template form needs a length to deserialize");
    return std::move(*section.sequence);
}

} // namespace ccsaa::io

// ---------------------------------------------------------------------------
// Job runners
// ---------------------------------------------------------------------------

namespace ccsaa::jobs {

namespace fs = std::filesystem;
using io::csv_cell;
using io::json;

namespace {

json parse_config_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error("config", std::string("invalid JSON: ") + e.what());
    }
}

std::string write_file(const fs::path& dir, const std::string& name,
                       const std::string& content) {
    fs::create_directories(dir);
    const fs::path full = dir / name;
    std::ofstream out(full, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + full.string() + " for writing");
    out << content;
    return full.string();
}

std::string output_name(const json& cfg, const char* fallback) {
    if (cfg.contains("output")) {
        if (!cfg["output"].is_string())
            throw validation_error("output", "expected a string");
        return cfg["output"].get<std::string>();
    }
    return fallback;
}

// --- bounds -----------------------------------------------------------------

struct BoundRow {
    std::string name;
    std::int64_t n_samples = 0;
    std::string parameters;
    bounds::BoundValue value;
};

BoundRow eval_bound_entry(const json& entry, const std::string& path) {
    const std::string name = [&] {
        if (!entry.contains("bound") || !entry["bound"].is_string())
            throw validation_error(path + ".bound", "required field missing");
        return entry["bound"].get<std::string>();
    }();
    BoundRow row;
    row.name = name;
    row.parameters = entry.dump();

    const auto num = [&](const char* key) {
        if (!entry.contains(key) || !entry[key].is_number())
            throw validation_error(path + "." + key, "required number missing");
        return entry[key].get<double>();
    };
    const auto integer = [&](const char* key) {
        if (!entry.contains(key) || !entry[key].is_number_integer())
            throw validation_error(path + "." + key, "required integer missing");
        return entry[key].get<std::int64_t>();
    };

    try {
        if (name == "finite") {
            row.n_samples = integer("N");
            row.value = bounds::bound_finite(static_cast<std::uint64_t>(integer("card_x")),
                                             num("alpha"), num("epsilon"), row.n_samples);
            return row;
        }
        if (name == "covering") {
            row.n_samples = integer("N");
            row.value = bounds::bound_covering(num("lipschitz"), num("diameter"), num("gamma"),
                                               integer("dim"), num("alpha"), num("epsilon"),
                                               row.n_samples);
            return row;
        }
        if (name == "luedtke") {
            row.n_samples = integer("N");
            row.value = bounds::bound_luedtke(num("lipschitz"), num("diameter"), num("gamma"),
                                              integer("dim"), num("alpha"), num("epsilon"),
                                              num("beta"), row.n_samples);
            return row;
        }
        if (name == "finite_drift" || name == "covering_drift") {
            row.n_samples = integer("N");
            Vec p;
            if (entry.contains("penalties")) {
                const json& pj = entry["penalties"];
                if (!pj.is_array() || pj.empty())
                    throw validation_error(path + ".penalties", "expected a nonempty array");
                p.assign(pj.begin(), pj.end());
                if (static_cast<std::int64_t>(p.size()) != row.n_samples)
                    throw validation_error(path + ".penalties", "length must equal N");
            } else {
                const auto budget = io::parse_budget(
                    [&]() -> const json& {
                        if (!entry.contains("budget"))
                            throw validation_error(path + ".budget",
                                                   "required field missing (or give explicit "
                                                   "\"penalties\")");
                        return entry["budget"];
                    }(),
                    path + ".budget");
                const auto radii_spec = io::parse_radii(
                    [&]() -> const json& {
                        if (!entry.contains("radii"))
                            throw validation_error(path + ".radii", "required field missing");
                        return entry["radii"];
                    }(),
                    path + ".radii");
                Vec radii;
                switch (radii_spec.rule) {
                    case mc::RadiiRule::zero:
                        radii.assign(static_cast<std::size_t>(row.n_samples), 0.0);
                        break;
                    case mc::RadiiRule::theta:
                        radii = saa::radii_from_theta(budget, row.n_samples, radii_spec.theta);
                        break;
                    case mc::RadiiRule::explicit_list:
                        radii = radii_spec.values;
                        if (static_cast<std::int64_t>(radii.size()) != row.n_samples)
                            throw validation_error(path + ".radii.values",
                                                   "length must equal N");
                        break;
                }
                p = bounds::penalties(budget, row.n_samples, radii, num("epsilon"));
            }
            if (name == "finite_drift")
                row.value = bounds::bound_finite_drift(
                    static_cast<std::uint64_t>(integer("card_x")), num("alpha"), row.n_samples,
                    p);
            else
                row.value = bounds::bound_covering_drift(num("lipschitz"), num("diameter"),
                                                         num("gamma"), integer("dim"),
                                                         num("alpha"), row.n_samples, p);
            return row;
        }
    } catch (const std::domain_error& e) {
        throw validation_error(path, e.what());
    }
    throw validation_error(path + ".bound", "unknown bound \"" + name + "\"");
}

JobOutput run_bounds(const json& cfg, const std::string& out_dir) {
    if (!cfg.contains("bounds") || !cfg["bounds"].is_array())
        throw validation_error("bounds", "expected an array of bound requests");
    const json& entries = cfg["bounds"];
    if (entries.empty()) throw validation_error("bounds", "no bounds requested");

    std::vector<BoundRow> rows;
    for (std::size_t i = 0; i < entries.size(); ++i)
        rows.push_back(eval_bound_entry(entries[i], "bounds[" + std::to_string(i) + "]"));

    std::ostringstream csv;
    io::CsvWriter writer(csv);
    writer.header({"bound", "N", "parameters", "raw", "log10", "clamped"});
    for (const auto& r : rows)
        writer.row({r.name, csv_cell(r.n_samples), r.parameters, csv_cell(r.value.raw),
                    csv_cell(r.value.log10_raw), csv_cell(r.value.clamped)});

    JobOutput out;
    out.files.push_back(write_file(out_dir, output_name(cfg, "bounds.csv"), csv.str()));

    std::ostringstream sum;
    sum << "bound                     N        raw            log10       clamped\n";
    for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-24s %-8lld %-14.6g %-11.4f %-10.6g\n",
                      r.name.c_str(), static_cast<long long>(r.n_samples), r.value.raw,
                      r.value.log10_raw, r.value.clamped);
        sum << line;
    }
    sum << "wrote " << out.files.back() << "\n";
    out.summary = sum.str();

    out.resolved_config = cfg.dump(2) + "\n";
    out.files.push_back(write_file(out_dir, "resolved_config.json", out.resolved_config));
    return out;
}

// --- sample-size ------------------------------------------------------------

JobOutput run_sample_size(const json& cfg, const std::string& out_dir) {
    const auto card = [&] {
        if (!cfg.contains("card_x") || !cfg["card_x"].is_number_integer())
            throw validation_error("card_x", "required integer missing");
        const auto v = cfg["card_x"].get<std::int64_t>();
        if (v < 1) throw validation_error("card_x", "must be >= 1");
        return static_cast<std::uint64_t>(v);
    }();
    const auto num = [&](const char* key) {
        if (!cfg.contains(key) || !cfg[key].is_number())
            throw validation_error(key, "required number missing");
        return cfg[key].get<double>();
    };
    std::int64_t n = 0;
    try {
        n = prob::min_sample_size(card, num("delta"), num("epsilon"), num("alpha"),
                                  num("theta"));
    } catch (const std::domain_error& e) {
        throw validation_error("config", e.what());
    }

    JobOutput out;
    out.summary = std::to_string(n) + "\n";
    json resolved = cfg;
    resolved["sample_size"] = n;
    out.resolved_config = resolved.dump(2) + "\n";
    out.files.push_back(write_file(out_dir, "resolved_config.json", out.resolved_config));
    return out;
}

// --- sweep ------------------------------------------------------------------

JobOutput run_sweep(const json& cfg, const std::string& out_dir) {
    const auto num = [&](const char* key) {
        if (!cfg.contains(key) || !cfg[key].is_number())
            throw validation_error(key, "required number missing");
        return cfg[key].get<double>();
    };
    const auto integer = [&](const char* key, std::int64_t fallback) {
        if (!cfg.contains(key)) return fallback;
        if (!cfg[key].is_number_integer())
            throw validation_error(key, "expected an integer");
        return cfg[key].get<std::int64_t>();
    };

    const double eps = num("epsilon");
    const double alpha = num("alpha");
    const double ratio = num("ld_over_gamma");
    const auto dim = integer("dim", 0);
    if (dim < 1) throw validation_error("dim", "required integer missing or < 1");
    const double beta = cfg.contains("beta") ? num("beta") : (eps - alpha) / 2.0;
    const auto n_min = integer("n_min", 1);
    const auto n_max = integer("n_max", 2000);

    const auto sweep = mc::sweep_bound_comparison(dim, eps, alpha, ratio, beta, n_min, n_max);

    std::ostringstream csv;
    io::CsvWriter writer(csv);
    writer.header({"N", "covering_raw", "covering_log10", "luedtke_raw", "luedtke_log10",
                   "ratio_luedtke_over_covering"});
    for (const auto& r : sweep.rows)
        writer.row({csv_cell(r.n_samples), csv_cell(r.covering_raw), csv_cell(r.covering_log10),
                    csv_cell(r.luedtke_raw), csv_cell(r.luedtke_log10), csv_cell(r.ratio)});

    JobOutput out;
    out.files.push_back(write_file(out_dir, output_name(cfg, "figure1.csv"), csv.str()));

    std::ostringstream sum;
    sum << "sweep: N in [" << n_min << ", " << n_max << "], dim=" << dim << ", epsilon=" << eps
        << ", alpha=" << alpha << ", LD/gamma=" << ratio << ", beta=" << beta << "\n";
    sum << "covering bound first drops below 1 at N="
        << (sweep.first_n_below_one > 0 ? std::to_string(sweep.first_n_below_one)
                                        : std::string("(never)"))
        << "\n";
    sum << "max ratio luedtke/covering = " << csv_cell(sweep.max_ratio) << "\n";
    sum << "wrote " << out.files.back() << "\n";
    out.summary = sum.str();

    json resolved = cfg;
    resolved["beta"] = beta;
    resolved["n_min"] = n_min;
    resolved["n_max"] = n_max;
    resolved["first_n_below_one"] = sweep.first_n_below_one;
    out.resolved_config = resolved.dump(2) + "\n";
    out.files.push_back(write_file(out_dir, "resolved_config.json", out.resolved_config));
    return out;
}

// --- simulate -----------------------------------------------------------------

std::string estimate_csv(const std::string& label, const mc::TrialConfig& cfg,
                         const mc::EstimateResult& est) {
    std::ostringstream csv;
    io::CsvWriter writer(csv);
    writer.header({"label", "N", "trials", "bad_trials", "frequency", "wilson_low",
                   "wilson_high", "wilson_halfwidth", "epsilon", "alpha", "gamma",
                   "bound_finite_drift_raw", "bound_finite_drift_clamped", "bound_pass",
                   "stationary_reduction", "approximate"});
    const auto& risk = cfg.instance.risk;
    const auto* drift = &est.bounds.front();
    const bool stationary = est.bounds.size() > 1;
    writer.row({label, csv_cell(est.sample_count), csv_cell(est.trials),
                csv_cell(est.bad_trials), csv_cell(est.frequency), csv_cell(est.interval.low),
                csv_cell(est.interval.high), csv_cell(est.interval.halfwidth),
                csv_cell(risk.epsilon), csv_cell(risk.alpha), csv_cell(risk.gamma),
                csv_cell(drift->raw), csv_cell(drift->clamped),
                est.all_pass ? "true" : "false", stationary ? "true" : "false",
                est.approximate ? "true" : "false"});
    return csv.str();
}

std::string decisions_csv(const mc::TrialConfig& cfg, const saa::SampleBatch& batch) {
    const auto& points = cfg.instance.decision_set.points;
    const std::size_t dim = points.front().size();
    std::vector<std::string> header{"index"};
    for (std::size_t j = 0; j < dim; ++j) header.push_back("x" + std::to_string(j));
    header.insert(header.end(),
                  {"violation", "robust_violation", "objective", "feasible"});

    std::ostringstream csv;
    io::CsvWriter writer(csv);
    writer.header(header);
    const double gamma = cfg.instance.risk.gamma;
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const auto& x = points[idx];
        const auto plain = saa::empirical_violation(cfg.instance.constraint, x, batch, gamma);
        const auto robust = saa::robust_empirical_violation(cfg.instance.constraint, x, batch,
                                                            gamma, cfg.robust);
        const bool feasible =
            fraction_le(robust.violations, robust.total, cfg.instance.risk.alpha);
        std::vector<std::string> cells{csv_cell(static_cast<std::int64_t>(idx))};
        for (std::size_t j = 0; j < dim; ++j) cells.push_back(csv_cell(x[j]));
        cells.push_back(csv_cell(plain.value()));
        cells.push_back(csv_cell(robust.value()));
        cells.push_back(cfg.instance.objective
                            ? csv_cell(dot(*cfg.instance.objective, x))
                            : std::string());
        cells.push_back(feasible ? "true" : "false");
        writer.row(cells);
    }
    return csv.str();
}

JobOutput run_simulate(const json& cfg, const std::string& out_dir,
                       std::optional<std::uint64_t> seed_override, int jobs) {
    const std::string label =
        cfg.contains("label") && cfg["label"].is_string() ? cfg["label"].get<std::string>()
                                                          : "simulate";
    mc::TrialConfig trial;
    if (!cfg.contains("instance"))
        throw validation_error("instance", "required field missing");
    trial.instance = io::parse_instance(cfg["instance"], "instance");
    if (!cfg.contains("sequence"))
        throw validation_error("sequence", "required field missing");
    auto section = io::parse_sequence_section(cfg["sequence"], "sequence");

    trial.radii = cfg.contains("radii") ? io::parse_radii(cfg["radii"], "radii")
                                        : mc::RadiiSpec{};
    if (cfg.contains("trials")) {
        if (!cfg["trials"].is_number_integer() || cfg["trials"].get<std::int64_t>() < 1)
            throw validation_error("trials", "expected a positive integer");
        trial.trials = cfg["trials"].get<std::int64_t>();
    }
    std::uint64_t seed = 0;
    if (cfg.contains("seed")) {
        if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
            throw validation_error("seed", "expected an integer");
        seed = cfg["seed"].get<std::uint64_t>();
    }
    if (seed_override) seed = *seed_override;
    trial.master_seed = seed;
    trial.jobs = jobs;
    if (cfg.contains("support_mode")) {
        const auto mode = cfg["support_mode"].get<std::string>();
        if (mode == "ball_only") trial.support_mode = saa::SupportMode::ball_only;
        else if (mode == "ball_intersect_support")
            trial.support_mode = saa::SupportMode::ball_intersect_support;
        else
            throw validation_error("support_mode",
                                   "expected \"ball_only\" or \"ball_intersect_support\"");
    }

    JobOutput out;
    json resolved = cfg;
    resolved["seed"] = seed;
    resolved["label"] = label;
    resolved.erase("jobs"); // execution detail; outputs are identical for any value

    mc::EstimateResult est;
    bool pass = true;

    if (cfg.contains("sample_size_check")) {
        const json& block = cfg["sample_size_check"];
        if (!block.contains("delta") || !block["delta"].is_number())
            throw validation_error("sample_size_check.delta", "required number missing");
        if (trial.radii.rule != mc::RadiiRule::theta)
            throw validation_error("radii.rule",
                                   "sample_size_check requires the theta radius rule");
        if (!section.drift_template)
            throw validation_error("sequence",
                                   "sample_size_check requires the template form (length is "
                                   "computed)");
        const double delta = block["delta"].get<double>();
        mc::SampleSizeCheckReport report;
        try {
            report = mc::verify_sample_size_guarantee(trial.instance, delta, trial.radii.theta,
                                                      *section.drift_template, trial.trials,
                                                      seed, jobs);
        } catch (const std::domain_error& e) {
            throw validation_error("sample_size_check", e.what());
        }
        est = report.estimate;
        pass = est.all_pass && report.pass;
        resolved["sample_size_check"]["sample_size"] = report.sample_size;

        std::ostringstream csv;
        io::CsvWriter writer(csv);
        writer.header({"card_x", "delta", "epsilon", "alpha", "theta", "N", "trials",
                       "bad_trials", "frequency", "wilson_halfwidth", "threshold", "pass"});
        writer.row({csv_cell(static_cast<std::uint64_t>(
                        trial.instance.decision_set.points.size())),
                    csv_cell(delta), csv_cell(trial.instance.risk.epsilon),
                    csv_cell(trial.instance.risk.alpha), csv_cell(trial.radii.theta),
                    csv_cell(report.sample_size), csv_cell(est.trials),
                    csv_cell(est.bad_trials), csv_cell(est.frequency),
                    csv_cell(est.interval.halfwidth),
                    csv_cell(delta + 4.0 * est.interval.halfwidth),
                    report.pass ? "true" : "false"});
        out.files.push_back(write_file(out_dir, "sample_size_check.csv", csv.str()));

        trial.sequence = dist::make_drifting_sequence(section.drift_template->start,
                                                      section.drift_template->drift_per_step,
                                                      report.sample_size,
                                                      section.drift_template->norm);
    } else {
        if (!section.sequence)
            throw validation_error("sequence.template.length",
                                   "required (no sample_size_check block to compute it)");
        trial.sequence = std::move(*section.sequence);
        est = mc::estimate_infeasibility(trial);
        pass = est.all_pass;
    }

    out.files.insert(out.files.begin(),
                     write_file(out_dir, output_name(cfg, "estimate.csv"),
                                estimate_csv(label, trial, est)));

    if (cfg.contains("export_decisions") && cfg["export_decisions"].is_boolean() &&
        cfg["export_decisions"].get<bool>()) {
        auto batch = dist::draw_sequence(trial.sequence, seed);
        batch.support_mode = trial.support_mode;
        switch (trial.radii.rule) {
            case mc::RadiiRule::zero: break;
            case mc::RadiiRule::theta:
                batch.radii = saa::radii_from_theta(trial.sequence.budget,
                                                    trial.sequence.sample_count(),
                                                    trial.radii.theta);
                break;
            case mc::RadiiRule::explicit_list: batch.radii = trial.radii.values; break;
        }
        out.files.push_back(
            write_file(out_dir, "decisions.csv", decisions_csv(trial, batch)));
    }

    std::ostringstream sum;
    sum << "simulate: " << label << "\n";
    sum << "  N=" << est.sample_count << " trials=" << est.trials
        << " |X|=" << trial.instance.decision_set.points.size()
        << " epsilon=" << trial.instance.risk.epsilon
        << " alpha=" << trial.instance.risk.alpha << " gamma=" << trial.instance.risk.gamma
        << "\n";
    sum << "  bad trials " << est.bad_trials << " -> frequency " << csv_cell(est.frequency)
        << "  wilson95 [" << csv_cell(est.interval.low) << ", " << csv_cell(est.interval.high)
        << "] halfwidth " << csv_cell(est.interval.halfwidth) << "\n";
    for (const auto& b : est.bounds)
        sum << "  bound " << b.name << ": raw " << csv_cell(b.raw) << " clamped "
            << csv_cell(b.clamped) << " -> " << (b.pass ? "PASS" : "FAIL") << "\n";
    if (cfg.contains("sample_size_check"))
        sum << "  sample size check -> " << (pass ? "PASS" : "FAIL") << "\n";
    if (est.approximate)
        sum << "  note: robust suprema involved sampled inner maximization (approximate)\n";
    for (const auto& f : out.files) sum << "wrote " << f << "\n";
    out.summary = sum.str();

    out.resolved_config = resolved.dump(2) + "\n";
    out.files.push_back(write_file(out_dir, "resolved_config.json", out.resolved_config));
    out.exit_code = pass ? 0 : 2;
    return out;
}

} // namespace

JobOutput run_job(const std::string& subcommand, const std::string& config_text,
                  const std::string& out_dir, std::optional<std::uint64_t> seed_override,
                  int jobs) {
    if (jobs < 1) throw validation_error("jobs", "must be >= 1");
    const json cfg = parse_config_text(config_text);
    if (subcommand == "bounds") return run_bounds(cfg, out_dir);
    if (subcommand == "sample-size") return run_sample_size(cfg, out_dir);
    if (subcommand == "sweep") return run_sweep(cfg, out_dir);
    if (subcommand == "simulate") return run_simulate(cfg, out_dir, seed_override, jobs);
    throw validation_error("subcommand", "unknown subcommand \"" + subcommand + "\"");
}

} // namespace ccsaa::jobs
