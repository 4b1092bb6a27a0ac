#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "aim/arm_stats.hpp"

namespace aim {

enum class RewardFamily { Gaussian, Bernoulli };

// Mutable per-run state shared by all policies. t counts completed rounds,
// so sum of pulls == t at all times.
struct PolicyState {
    std::vector<ArmStats> arms;
    std::int64_t t = 0;
    double sigma2 = 1.0;    // known reward variance (Gaussian model)
    double c_ucb = 2.1;     // UCB-tuned exploration constant
    double c_klucb = 1e-5;  // KL-UCB log-log coefficient
};

struct ArmChoice {
    int index;
    double delta = std::numeric_limits<double>::quiet_NaN();  // tracing only
};

// Entropy-driven selection for two Gaussian arms: exploit the empirical best
// when the simplified statistic is negative, probe the other one otherwise.
ArmChoice select_aim_gauss2(const PolicyState& state);

// Bernoulli two-arm variant ordering by posterior means; picks the arm with
// the larger absolute expected entropy change.
ArmChoice select_aim_bern2(const PolicyState& state);

// K-arm Bernoulli variant: best empirical arm versus the strongest
// challenger by absolute expected entropy change.
ArmChoice select_aim_bernK(const PolicyState& state);

ArmChoice select_thompson(const PolicyState& state, RewardFamily family, std::mt19937_64& rng);

ArmChoice select_ucb_tuned(const PolicyState& state);

ArmChoice select_kl_ucb(const PolicyState& state);

// Highest admissible mean for one arm under the KL budget, solved by
// bisection on [mean, 1] (tolerance 1e-5, at most 50 iterations).
double kl_ucb_index(double mean, std::int64_t pulls, double budget);

}  // namespace aim
