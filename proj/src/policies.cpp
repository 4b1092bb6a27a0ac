#include "aim/policies.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "aim/entropy_expfam.hpp"
#include "aim/entropy_gaussian.hpp"

namespace aim {

namespace {

// (max, min) arm indices for two-arm policies. Ties on the ordering mean go
// to the arm with fewer pulls, then to the lower index.
template <class MeanOf>
std::pair<int, int> order_two(const PolicyState& s, MeanOf&& mean_of) {
    assert(s.arms.size() == 2);
    const double m0 = mean_of(s.arms[0]);
    const double m1 = mean_of(s.arms[1]);
    if (m0 > m1) return {0, 1};
    if (m1 > m0) return {1, 0};
    return s.arms[1].pulls < s.arms[0].pulls ? std::pair{1, 0} : std::pair{0, 1};
}

int argmax_lowest_index(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

}  // namespace

ArmChoice select_aim_gauss2(const PolicyState& s) {
    const auto [mx, mn] = order_two(s, [](const ArmStats& a) { return a.mean(); });
    const ArmStats& amax = s.arms[mx];
    const ArmStats& amin = s.arms[mn];
    if (amax.pulls <= amin.pulls) return {mx};
    const EntropyState es{amax.mean(), amax.pulls, amin.mean(), amin.pulls, s.sigma2};
    const double d = delta_simplified(es);
    return d < 0.0 ? ArmChoice{mx, d} : ArmChoice{mn, d};
}

ArmChoice select_aim_bern2(const PolicyState& s) {
    const auto [mx, mn] =
        order_two(s, [](const ArmStats& a) { return beta_posterior(a).mean_b; });
    if (s.arms[mx].pulls <= s.arms[mn].pulls) return {mx};
    const BetaPosterior bmax = beta_posterior(s.arms[mx]);
    const BetaPosterior bmin = beta_posterior(s.arms[mn]);
    const double d = delta_abs_bernoulli(bmax, bmin, ArmRole::Max) -
                     delta_abs_bernoulli(bmin, bmax, ArmRole::Min);
    return d > 0.0 ? ArmChoice{mx, d} : ArmChoice{mn, d};
}

ArmChoice select_aim_bernK(const PolicyState& s) {
    const int k = static_cast<int>(s.arms.size());
    assert(k >= 2);
    std::vector<BetaPosterior> betas;
    betas.reserve(k);
    for (const ArmStats& a : s.arms) betas.push_back(beta_posterior(a));

    int mx = 0;
    for (int i = 1; i < k; ++i) {
        if (betas[i].mean_b > betas[mx].mean_b ||
            (betas[i].mean_b == betas[mx].mean_b && s.arms[i].pulls < s.arms[mx].pulls))
            mx = i;
    }

    const double d_max = delta_max_multiarm(betas, static_cast<std::size_t>(mx));
    int challenger = -1;
    double d_ch = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        if (i == mx) continue;
        const double di = delta_abs_bernoulli(betas[i], betas[mx], ArmRole::Min);
        if (di > d_ch) {
            d_ch = di;
            challenger = i;
        }
    }
    return d_max > d_ch ? ArmChoice{mx, d_max - d_ch} : ArmChoice{challenger, d_max - d_ch};
}

ArmChoice select_thompson(const PolicyState& s, RewardFamily family, std::mt19937_64& rng) {
    std::vector<double> samples(s.arms.size());
    for (std::size_t i = 0; i < s.arms.size(); ++i) {
        const ArmStats& a = s.arms[i];
        if (family == RewardFamily::Gaussian) {
            const double var =
                std::max(s.sigma2 / static_cast<double>(a.pulls), 1e-18);
            samples[i] = std::normal_distribution<double>(a.mean(), std::sqrt(var))(rng);
        } else {
            std::gamma_distribution<double> ga(a.cum_reward + 1.0, 1.0);
            std::gamma_distribution<double> gb(static_cast<double>(a.pulls) - a.cum_reward + 1.0, 1.0);
            const double x = ga(rng);
            const double y = gb(rng);
            samples[i] = x / (x + y);
        }
    }
    return {argmax_lowest_index(samples)};
}

ArmChoice select_ucb_tuned(const PolicyState& s) {
    const double lt = std::log(static_cast<double>(s.t));
    std::vector<double> idx(s.arms.size());
    for (std::size_t i = 0; i < s.arms.size(); ++i) {
        const ArmStats& a = s.arms[i];
        const double n = static_cast<double>(a.pulls);
        const double var_hat = s.sigma2 / n;
        const double cap = std::min(0.25, var_hat + std::sqrt(2.0 * lt / n));
        idx[i] = a.mean() + s.c_ucb * std::sqrt(lt / n * cap);
    }
    return {argmax_lowest_index(idx)};
}

double kl_ucb_index(double mean, std::int64_t pulls, double budget) {
    if (mean >= 1.0) return 1.0;
    const double n = static_cast<double>(pulls);
    double lo = mean, hi = 1.0;
    for (int it = 0; it < 50 && hi - lo > 1e-5; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (n * kl_bernoulli(mean, mid) <= budget)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

ArmChoice select_kl_ucb(const PolicyState& s) {
    const double lt = std::log(static_cast<double>(s.t));
    const double budget = lt <= 0.0 ? 0.0 : std::max(0.0, lt + s.c_klucb * std::log(lt));
    std::vector<double> idx(s.arms.size());
    for (std::size_t i = 0; i < s.arms.size(); ++i)
        idx[i] = kl_ucb_index(s.arms[i].mean(), s.arms[i].pulls, budget);
    return {argmax_lowest_index(idx)};
}

}  // namespace aim
