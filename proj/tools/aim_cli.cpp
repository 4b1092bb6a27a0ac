// Experiment front end: run a configured regret experiment to CSV, sweep a
// config into per-policy CSVs, or run the numerical validation suite.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aim/config.hpp"
#include "aim/csv.hpp"
#include "aim/sim.hpp"
#include "aim/validate.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRunError = 3;
constexpr int kExitValidationError = 4;

struct RunArgs {
    std::string config_path;
    std::string out_path;
    std::int64_t horizon = -1;
    int runs = -1;
    std::string seed;
    std::string policies;
};

aim::ConfigOverrides overrides_of(const RunArgs& a) {
    aim::ConfigOverrides ov;
    if (a.horizon >= 0) ov.horizon = a.horizon;
    if (a.runs >= 0) ov.runs = a.runs;
    if (!a.seed.empty()) ov.seed = std::stoull(a.seed);
    if (!a.policies.empty()) {
        std::vector<std::string> names;
        std::string cur;
        for (char c : a.policies) {
            if (c == ',' || c == ' ') {
                if (!cur.empty()) names.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) names.push_back(cur);
        ov.policies = names;
    }
    return ov;
}

int do_run(const RunArgs& args) {
    aim::ExperimentConfig cfg;
    try {
        cfg = aim::parse_config(args.config_path, overrides_of(args));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    }
    try {
        const aim::AggregatedTable table = aim::run_experiment(cfg);
        aim::emit_csv(table, args.out_path);
        std::printf("wrote %s (%zu rows)\n", args.out_path.c_str(), table.rows.size());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "run error: %s\n", e.what());
        return kExitRunError;
    }
    return 0;
}

int do_sweep(const RunArgs& args) {
    aim::ExperimentConfig cfg;
    try {
        cfg = aim::parse_config(args.config_path, overrides_of(args));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    }
    try {
        std::filesystem::create_directories(args.out_path);
        const aim::AggregatedTable table = aim::run_experiment(cfg);
        for (const aim::PolicySpec& p : cfg.policies) {
            aim::AggregatedTable sub;
            for (const aim::AggRow& r : table.rows)
                if (r.policy == p.name) sub.rows.push_back(r);
            const std::string path = args.out_path + "/" + p.name + ".csv";
            aim::emit_csv(sub, path);
            std::printf("wrote %s (%zu rows)\n", path.c_str(), sub.rows.size());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "run error: %s\n", e.what());
        return kExitRunError;
    }
    return 0;
}

int do_validate() {
    const aim::ValidationReport report = aim::run_validation();
    std::fputs(aim::format_report(report).c_str(), stdout);
    if (!report.all_pass()) {
        std::fprintf(stderr, "validation failed\n");
        return kExitValidationError;
    }
    std::printf("all validation checks passed\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-driven bandit policies: experiments and validation"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run an experiment and write one CSV");
    run->add_option("--config", run_args.config_path, "experiment config file")->required();
    run->add_option("--out", run_args.out_path, "output CSV path")->required();
    run->add_option("--horizon", run_args.horizon, "override horizon");
    run->add_option("--runs", run_args.runs, "override replicate count");
    run->add_option("--seed", run_args.seed, "override base seed");
    run->add_option("--policies", run_args.policies, "override policy list (comma separated)");

    RunArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "run an experiment, one CSV per policy");
    sweep->add_option("--config", sweep_args.config_path, "experiment config file")->required();
    sweep->add_option("--out", sweep_args.out_path, "output directory")->required();
    sweep->add_option("--horizon", sweep_args.horizon, "override horizon");
    sweep->add_option("--runs", sweep_args.runs, "override replicate count");
    sweep->add_option("--seed", sweep_args.seed, "override base seed");
    sweep->add_option("--policies", sweep_args.policies, "override policy list (comma separated)");

    CLI::App* validate = app.add_subcommand("validate", "run the numerical identity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfigError;
    }

    if (run->parsed()) return do_run(run_args);
    if (sweep->parsed()) return do_sweep(sweep_args);
    if (validate->parsed()) return do_validate();
    return kExitConfigError;
}
