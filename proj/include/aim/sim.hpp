#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aim/policies.hpp"

namespace aim {

struct BanditInstance {
    RewardFamily family;
    std::vector<double> means;
    double sigma2 = 1.0;  // Gaussian reward variance
};

struct RegretTrace {
    // (round, cumulative pseudo-regret) at each requested checkpoint.
    std::vector<std::pair<std::int64_t, double>> checkpoints;
    std::vector<std::int64_t> final_pulls;
};

enum class PolicyKind { AimGauss2, AimBern2, AimBernK, Thompson, UcbTuned, KlUcb };

struct PolicySpec {
    std::string name;  // label used in output and seeding
    PolicyKind kind;
    double sigma2 = 1.0;
    double c_ucb = 2.1;
    double c_klucb = 1e-5;
};

enum class MeanSource { Fixed, SobolGrid, Uniform };

struct ExperimentConfig {
    std::vector<PolicySpec> policies;
    RewardFamily family = RewardFamily::Gaussian;
    int k = 2;
    double sigma2 = 1.0;
    MeanSource mean_source = MeanSource::Fixed;
    std::vector<double> fixed_means;
    int sobol_count = 0;  // SobolGrid: number of mean pairs
    std::int64_t horizon = 0;
    int runs = 1;
    std::uint64_t base_seed = 0;
    std::vector<std::int64_t> checkpoints;  // empty: geometric default
};

struct AggRow {
    std::string policy;
    std::int64_t t;
    double mean_regret;
    double stderr_regret;
    std::int64_t runs;
};

struct AggregatedTable {
    std::vector<AggRow> rows;  // sorted by (policy, t)
};

// Geometric checkpoint grid 1, ..., horizon with ratio 1.25, deduplicated,
// horizon always included.
std::vector<std::int64_t> default_checkpoints(std::int64_t horizon);

// One full episode: pull each arm once in index order, then follow the
// policy. Rewards and any policy randomness come from streams derived from
// seed, so the trace is a pure function of the arguments.
RegretTrace run_episode(const PolicySpec& policy, const BanditInstance& instance,
                        std::int64_t horizon, std::uint64_t seed,
                        std::span<const std::int64_t> checkpoints);

// Runs every (policy, instance, replicate) cell concurrently (worker count
// capped by AIM_THREADS, 0 or unset meaning auto) and aggregates mean regret
// and standard error per checkpoint. The result does not depend on the
// execution order.
AggregatedTable run_experiment(const ExperimentConfig& config);

// Instances the config expands to: one (Fixed), sobol_count pairs
// (SobolGrid), or `runs` fresh draws from the uniform prior (Uniform).
std::vector<BanditInstance> instances_of(const ExperimentConfig& config);

}  // namespace aim
