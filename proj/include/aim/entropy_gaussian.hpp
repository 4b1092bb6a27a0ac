#pragma once

#include <cstdint>

namespace aim {

// Two-armed Gaussian summary feeding the entropy formulas. Arms are ordered
// by the caller: mean_max >= mean_min.
struct EntropyState {
    double mean_max;
    std::int64_t n_max;
    double mean_min;
    std::int64_t n_min;
    double sigma2;
};

// Crossing point where both arms are equally likely to carry the maximum.
// Undefined when n_max <= n_min: the tail is then folded into the body term
// and callers treat s_tail as 0.
struct ThetaEq {
    double value;
    bool defined;
};

struct SAppParts {
    double body;
    double tail;
};

struct ArmIncrements {
    double delta_max;
    double delta_min;
};

ThetaEq theta_eq(const EntropyState& state);

// Exact entropy carried by the low arm's upper tail beyond teq.
double s_tail_exact(const EntropyState& state, double teq);

// Exact entropy contribution of the top arm's mode, weighted by the low
// arm's cdf.
double s_body_exact(const EntropyState& state);

// Asymptotic body/tail pair evaluated at an explicit gap = teq - mean_min.
// Exposed separately so expectation oracles can shift the gap.
SAppParts s_app_parts(double n_max, double n_min, double gap, double sigma2);

// Same pair at the state's own theta_eq; degenerate states give
// (0.5*ln(2*pi*sigma2*e/n_max), 0).
SAppParts s_app_components(const EntropyState& state);

// Expected one-step change of body+tail when pulling the top (resp. low)
// arm, integrated in closed form over the Gaussian reward. Throws
// std::invalid_argument when theta_eq is undefined.
ArmIncrements increment_closed_form(const EntropyState& state);

// Same increments at an explicit crossing point.
ArmIncrements increment_closed_form_at(const EntropyState& state, double teq);

// Simplified decision statistic: leading terms of delta_max - delta_min.
// Negative means pulling the top arm shrinks the entropy most.
// Requires n_max > n_min.
double delta_simplified(const EntropyState& state);

}  // namespace aim
