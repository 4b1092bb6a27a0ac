#include "aim/entropy_expfam.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tail mass of the low arm beyond teq under the Laplace expansion:
// exp(-n K) / (n d2K sqrt(2 pi V)).
double tail_weight(const ExpFamArm& arm, double kl_val, double kl_d2_val) {
    return std::exp(-arm.n_eff * kl_val) /
           (arm.n_eff * kl_d2_val * std::sqrt(kTwoPi * arm.variance));
}

double half_log_2pi_v(const ExpFamArm& arm) { return 0.5 * std::log(kTwoPi * arm.variance); }

// Ordering used for Bernoulli pair states: higher posterior mean first,
// ties to the smaller effective count.
bool is_max_of(const BetaPosterior& a, const BetaPosterior& b) {
    if (a.mean_b != b.mean_b) return a.mean_b > b.mean_b;
    return a.n_b <= b.n_b;
}

// Roles fixed by the caller; applies the bounded-domain teq convention.
double s_app_bernoulli_roles(const BetaPosterior& mx, const BetaPosterior& mn) {
    const ExpFamArm amax = expfam_from_beta(mx);
    const ExpFamArm amin = expfam_from_beta(mn);
    const ThetaEq te = theta_eq_general(amax, amin, bernoulli_kl());
    if (!te.defined) return half_log_2pi_v(amax);
    return s_app_general(amax, amin, te.value, bernoulli_kl());
}

struct BranchUpdate {
    double weight;
    BetaPosterior arm;
};

// Predicted-reward mixture: reward 1 with probability equal to the current
// empirical mean, reward 0 otherwise; each branch is the exact posterior
// update mean_b -> (mean_b (n_b - 1) + X) / n_b, n_b -> n_b + 1.
void two_point_branches(const BetaPosterior& arm, BranchUpdate out[2]) {
    const double n = static_cast<double>(arm.n_b);
    const double w1 = (arm.mean_b * (n - 1.0) - 1.0) / (n - 3.0);
    out[0] = {w1, BetaPosterior{(arm.mean_b * (n - 1.0) + 1.0) / n, arm.n_b + 1}};
    out[1] = {1.0 - w1, BetaPosterior{arm.mean_b * (n - 1.0) / n, arm.n_b + 1}};
}
}  // namespace

const KlFunctions& bernoulli_kl() {
    static const KlFunctions kl{
        [](double p, double q) { return kl_bernoulli(p, q); },
        [](double p, double q) { return kl_bernoulli_d2(p, q); },
        1.0,
    };
    return kl;
}

ThetaEq theta_eq_general(const ExpFamArm& arm_max, const ExpFamArm& arm_min, const KlFunctions& kl) {
    double bracket = arm_min.n_eff * kl.kl(arm_min.mean_hat, arm_max.mean_hat) +
                     0.5 * std::log(arm_min.variance / arm_max.variance);
    if (bracket < 0.0) bracket = 0.0;
    const double value = arm_max.mean_hat + std::sqrt(2.0 * arm_max.variance * bracket);
    bool defined = true;
    if (std::isfinite(kl.theta_sup))
        defined = value <= kl.theta_sup && arm_max.n_eff > arm_min.n_eff;
    return {value, defined};
}

double s_app_general(const ExpFamArm& arm_max, const ExpFamArm& arm_min, double teq,
                     const KlFunctions& kl) {
    const double K = kl.kl(arm_min.mean_hat, teq);
    const double d2 = kl.kl_d2(arm_min.mean_hat, teq);
    if (d2 <= 0.0)
        throw std::invalid_argument("s_app_general: kl_d2 <= 0, teq left of the divergence minimum");
    const double w = tail_weight(arm_min, K, d2);
    return half_log_2pi_v(arm_max) * (1.0 - w) + arm_min.n_eff * K * w;
}

double s_app_bernoulli_pair(const BetaPosterior& a, const BetaPosterior& b) {
    return is_max_of(a, b) ? s_app_bernoulli_roles(a, b) : s_app_bernoulli_roles(b, a);
}

double delta_abs_bernoulli(const BetaPosterior& arm_i, const BetaPosterior& other, ArmRole role) {
    const double s_now = role == ArmRole::Max ? s_app_bernoulli_roles(arm_i, other)
                                              : s_app_bernoulli_roles(other, arm_i);
    BranchUpdate br[2];
    two_point_branches(arm_i, br);
    // Branch states are re-ordered by posterior mean: a pull can invert the
    // arms, which is exactly the large-entropy-swing case the absolute value
    // guards against.
    const double s1 = s_app_bernoulli_pair(br[0].arm, other);
    const double s0 = s_app_bernoulli_pair(br[1].arm, other);
    return std::fabs(br[0].weight * s1 + br[1].weight * s0 - s_now);
}

double delta_max_multiarm(std::span<const BetaPosterior> arms, std::size_t max_index) {
    const BetaPosterior& top = arms[max_index];
    const ExpFamArm amax = expfam_from_beta(top);

    double weight_sum = 0.0;
    for (std::size_t i = 0; i < arms.size(); ++i) {
        if (i == max_index) continue;
        const ExpFamArm ai = expfam_from_beta(arms[i]);
        const ThetaEq te = theta_eq_general(amax, ai, bernoulli_kl());
        if (!te.defined) continue;  // tail dropped by the bounded-domain rule
        const double K = kl_bernoulli(ai.mean_hat, te.value);
        const double d2 = kl_bernoulli_d2(ai.mean_hat, te.value);
        weight_sum += tail_weight(ai, K, d2);
    }

    const auto body_entropy = [](const BetaPosterior& b) {
        return 0.5 * std::log(kTwoPi * b.mean_b * (1.0 - b.mean_b) / static_cast<double>(b.n_b));
    };
    BranchUpdate br[2];
    two_point_branches(top, br);
    const double dh = std::fabs(br[0].weight * body_entropy(br[0].arm) +
                                br[1].weight * body_entropy(br[1].arm) - body_entropy(top));
    return std::fabs(1.0 - weight_sum) * dh;
}

}  // namespace aim
