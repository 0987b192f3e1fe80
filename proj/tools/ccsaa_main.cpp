// Command-line front end. All heavy lifting lives behind the shared C API;
// this binary only parses flags, reads the config file and relays results.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ccsaa/ccsaa.h"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "output directory for CSV artifacts");
    cmd->add_option("--seed", args.seed, "master seed override");
    cmd->add_option("--jobs", args.jobs, "worker threads for simulation trials")
        ->check(CLI::PositiveNumber);
}

int run(const std::string& subcommand, const CommonArgs& args) {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "error: cannot read %s\n", args.config_path.c_str());
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string config = buf.str();

    const std::uint64_t seed_value = args.seed.value_or(0);
    ccsaa_result* result = nullptr;
    const ccsaa_status status =
        ccsaa_run(subcommand.c_str(), config.c_str(), args.out_dir.c_str(),
                  args.seed ? &seed_value : nullptr, args.jobs, &result);

    if (result != nullptr) {
        std::fputs(ccsaa_result_summary(result), stdout);
        ccsaa_result_free(result);
    }
    if (status != CCSAA_OK)
        std::fprintf(stderr, "error: %s\n", ccsaa_last_error());
    return static_cast<int>(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chance-constraint SAA bounds, simulation and sweep toolkit"};
    app.require_subcommand(1);

    CommonArgs bounds_args, simulate_args, sample_args, sweep_args;
    auto* bounds = app.add_subcommand("bounds", "evaluate infeasibility bounds to CSV");
    add_common(bounds, bounds_args);
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo infeasibility estimate vs bounds");
    add_common(simulate, simulate_args);
    auto* sample_size =
        app.add_subcommand("sample-size", "minimum sample size for a confidence target");
    add_common(sample_size, sample_args);
    auto* sweep = app.add_subcommand("sweep", "bound comparison over a sample-size range");
    add_common(sweep, sweep_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) != 0 ? 1 : 0;
    }

    if (bounds->parsed()) return run("bounds", bounds_args);
    if (simulate->parsed()) return run("simulate", simulate_args);
    if (sample_size->parsed()) return run("sample-size", sample_args);
    if (sweep->parsed()) return run("sweep", sweep_args);
    return 1;
}
