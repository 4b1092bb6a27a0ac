#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include "aim/arm_stats.hpp"
#include "aim/entropy_gaussian.hpp"  // ThetaEq

namespace aim {

// Posterior summary of one arm in a one-parameter exponential family:
// posterior mean (or MAP), effective count, and posterior variance.
struct ExpFamArm {
    double mean_hat;
    double n_eff;
    double variance;
};

// Divergence pair for the reward family: kl(theta, theta') and its
// derivative in the second argument. theta_sup bounds the mean domain
// (1 for Bernoulli, +inf for unbounded families).
struct KlFunctions {
    std::function<double(double, double)> kl;
    std::function<double(double, double)> kl_d2;
    double theta_sup = std::numeric_limits<double>::infinity();
};

const KlFunctions& bernoulli_kl();

inline ExpFamArm expfam_from_beta(const BetaPosterior& b) {
    const double n = static_cast<double>(b.n_b);
    return ExpFamArm{b.mean_b, n, b.mean_b * (1.0 - b.mean_b) / n};
}

// Crossing point from the quadratic expansion of the divergence around the
// top arm: mean_max + sqrt(2 V_max [n_min kl(mean_min, mean_max) +
// ln(V_min/V_max)/2]), bracket clamped at zero. For bounded families the
// value is undefined when it exceeds theta_sup or when n_max <= n_min;
// callers then drop the tail contribution entirely.
ThetaEq theta_eq_general(const ExpFamArm& arm_max, const ExpFamArm& arm_min, const KlFunctions& kl);

// Asymptotic entropy for a two-arm exponential-family state at a given teq.
// Throws std::invalid_argument if kl_d2(mean_min, teq) <= 0.
double s_app_general(const ExpFamArm& arm_max, const ExpFamArm& arm_min, double teq,
                     const KlFunctions& kl);

// Bernoulli two-arm entropy; orders the pair internally (higher posterior
// mean wins, ties go to the smaller count) and applies the bounded-domain
// teq convention.
double s_app_bernoulli_pair(const BetaPosterior& a, const BetaPosterior& b);

enum class ArmRole { Max, Min };

// Absolute expected entropy change when pulling arm_i once: two-point
// Bernoulli mixture over the predicted reward with weights equal to the
// empirical mean. role gives arm_i's current label so tied states keep the
// caller's ordering.
double delta_abs_bernoulli(const BetaPosterior& arm_i, const BetaPosterior& other, ArmRole role);

// K-arm increment along the best empirical arm: the body-entropy increment
// damped by one minus the summed tail weights of the worse arms.
double delta_max_multiarm(std::span<const BetaPosterior> arms, std::size_t max_index);

}  // namespace aim
