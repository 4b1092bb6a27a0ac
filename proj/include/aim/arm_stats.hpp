#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace aim {

// Per-arm sufficient statistics. Rewards are accumulated as an exact running
// sum plus a count so that Bernoulli bookkeeping stays integer-exact.
struct ArmStats {
    std::int64_t pulls = 0;
    double cum_reward = 0.0;

    double mean() const {
        assert(pulls > 0 && "mean of an unpulled arm is undefined");
        return cum_reward / static_cast<double>(pulls);
    }
};

inline ArmStats update_stats(const ArmStats& s, double reward) {
    return ArmStats{s.pulls + 1, s.cum_reward + reward};
}

// Gaussian posterior of an arm mean under a flat prior and known reward
// variance sigma2: N(mean, sigma2 / pulls).
struct GaussianPosterior {
    double mean;
    double variance;
    double sigma2;
    std::int64_t pulls;
};

inline GaussianPosterior gaussian_posterior(const ArmStats& s, double sigma2) {
    if (s.pulls < 1) throw std::domain_error("gaussian_posterior: arm has no pulls");
    return GaussianPosterior{s.mean(), sigma2 / static_cast<double>(s.pulls), sigma2, s.pulls};
}

// Beta posterior summary for Bernoulli rewards under a uniform prior.
// mean_b = (cum+1)/(pulls+2) is the posterior mean and n_b = pulls+3 the
// effective count: posterior variance equals mean_b*(1-mean_b)/n_b.
struct BetaPosterior {
    double mean_b;
    std::int64_t n_b;
};

inline BetaPosterior beta_posterior(const ArmStats& s) {
    if (s.cum_reward < 0.0 || s.cum_reward > static_cast<double>(s.pulls))
        throw std::domain_error("beta_posterior: cumulative reward outside [0, pulls]");
    return BetaPosterior{(s.cum_reward + 1.0) / static_cast<double>(s.pulls + 2), s.pulls + 3};
}

// Bernoulli KL divergence, with the boundary conventions kl(0,q) = -ln(1-q)
// and kl(1,q) = -ln q (0*ln 0 = 0). q in {0,1} with p != q has no finite value.
inline double kl_bernoulli(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw std::domain_error("kl_bernoulli: arguments must lie in [0,1]");
    if (p == q) return 0.0;
    if (q <= 0.0 || q >= 1.0)
        throw std::domain_error("kl_bernoulli: q on the boundary with p != q");
    if (p <= 0.0) return -std::log1p(-q);
    if (p >= 1.0) return -std::log(q);
    return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

// Derivative of kl_bernoulli in its second argument.
inline double kl_bernoulli_d2(double p, double q) {
    return (q - p) / (q * (1.0 - q));
}

// KL between two Gaussians of common variance sigma2.
inline double kl_gaussian(double mu1, double mu2, double sigma2) {
    assert(sigma2 > 0.0);
    const double d = mu1 - mu2;
    return d * d / (2.0 * sigma2);
}

}  // namespace aim
