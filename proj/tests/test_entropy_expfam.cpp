#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "aim/entropy_expfam.hpp"
#include "aim/entropy_gaussian.hpp"
#include "aim/rng.hpp"

using namespace aim;

namespace {

const KlFunctions kGaussKl{[](double a, double b) { return (a - b) * (a - b) / 2.0; },
                           [](double a, double b) { return b - a; }};

BetaPosterior beta_of(double mean_b, std::int64_t n_b) { return BetaPosterior{mean_b, n_b}; }

// Tail mass of one arm beyond teq, as used inside the entropy formulas.
double tail_weight_of(const BetaPosterior& b, double teq) {
    const ExpFamArm a = expfam_from_beta(b);
    const double K = kl_bernoulli(a.mean_hat, teq);
    const double d2 = kl_bernoulli_d2(a.mean_hat, teq);
    return std::exp(-a.n_eff * K) / (a.n_eff * d2 * std::sqrt(2.0 * std::numbers::pi * a.variance));
}

double body_entropy_of(const BetaPosterior& b) {
    return 0.5 * std::log(2.0 * std::numbers::pi * b.mean_b * (1.0 - b.mean_b) /
                          static_cast<double>(b.n_b));
}

}  // namespace

TEST_CASE("theta_eq_general basics") {
    SUBCASE("identical arms return the shared mean") {
        const ExpFamArm a{0.4, 50.0, 0.02};
        const ThetaEq te = theta_eq_general(a, a, kGaussKl);
        CHECK(te.defined);
        CHECK(te.value == doctest::Approx(0.4).epsilon(1e-15));
    }
    SUBCASE("bernoulli value satisfies the truncated balance with exact divergence") {
        const ExpFamArm amax = expfam_from_beta(beta_of(0.8, 200));
        const ExpFamArm amin = expfam_from_beta(beta_of(0.3, 10));
        const ThetaEq te = theta_eq_general(amax, amin, bernoulli_kl());
        REQUIRE(te.defined);
        CHECK(te.value < 1.0);
        const double residual = amin.n_eff * kl_bernoulli(amin.mean_hat, amax.mean_hat) +
                                0.5 * std::log(amin.variance / amax.variance) -
                                (te.value - amax.mean_hat) * (te.value - amax.mean_hat) /
                                    (2.0 * amax.variance);
        CHECK(std::fabs(residual) <= 1e-6);
    }
    SUBCASE("bernoulli value above one is undefined") {
        const ExpFamArm amax = expfam_from_beta(beta_of(0.9, 200));
        const ExpFamArm amin = expfam_from_beta(beta_of(0.3, 10));
        const ThetaEq te = theta_eq_general(amax, amin, bernoulli_kl());
        CHECK(te.value > 1.0);
        CHECK_FALSE(te.defined);
    }
    SUBCASE("bernoulli count order gates definedness") {
        const ExpFamArm amax = expfam_from_beta(beta_of(0.6, 10));
        const ExpFamArm amin = expfam_from_beta(beta_of(0.4, 40));
        CHECK_FALSE(theta_eq_general(amax, amin, bernoulli_kl()).defined);
    }
}

TEST_CASE("theta_eq_general with Gaussian divergence tracks the closed form") {
    std::mt19937_64 rng = make_rng(201);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> nmin_d(5, 2000);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t nmin = nmin_d(rng);
        std::uniform_int_distribution<std::int64_t> nmax_d(100 * nmin, 100000000);
        const std::int64_t nmax = nmax_d(rng);
        double a = u01(rng), b = u01(rng);
        if (a < b) std::swap(a, b);
        if (a == b) continue;
        const EntropyState st{a, nmax, b, nmin, 1.0};
        const ThetaEq te = theta_eq(st);
        const ExpFamArm amax{a, static_cast<double>(nmax), 1.0 / nmax};
        const ExpFamArm amin{b, static_cast<double>(nmin), 1.0 / nmin};
        const ThetaEq tg = theta_eq_general(amax, amin, kGaussKl);
        // Band calibrated on this grid: the two roots differ by at most
        // 1.5 * nmin/nmax in relative terms once nmax >= 100 nmin.
        CHECK(std::fabs(tg.value - te.value) / std::fabs(te.value) <=
              1.5 * static_cast<double>(nmin) / static_cast<double>(nmax));
    }
}

TEST_CASE("s_app_general limits and cross-checks") {
    SUBCASE("deep tail leaves only the top-arm entropy") {
        const ExpFamArm amax{0.9, 1e6, 9e-8};
        const ExpFamArm amin{0.1, 50.0, 0.0018};
        const double s = s_app_general(amax, amin, 0.9, bernoulli_kl());
        CHECK(s == doctest::Approx(0.5 * std::log(2.0 * std::numbers::pi * 9e-8)).epsilon(1e-9));
    }
    SUBCASE("gaussian divergence reproduces the two-arm pair up to the half offset") {
        std::mt19937_64 rng = make_rng(202);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        std::uniform_int_distribution<std::int64_t> nmin_d(25, 2000);
        for (int i = 0; i < 20; ++i) {
            const std::int64_t nmin = nmin_d(rng);
            std::uniform_int_distribution<std::int64_t> nmax_d(100 * nmin, 10000000);
            const std::int64_t nmax = nmax_d(rng);
            const double gap = 4.0 / std::sqrt(static_cast<double>(nmin)) + 0.3 * u01(rng);
            const double lo = 0.2 * u01(rng);
            const EntropyState st{lo + gap, nmax, lo, nmin, 1.0};
            const SAppParts p = s_app_components(st);
            const ExpFamArm amax{lo + gap, static_cast<double>(nmax), 1.0 / nmax};
            const ExpFamArm amin{lo, static_cast<double>(nmin), 1.0 / nmin};
            const ThetaEq tg = theta_eq_general(amax, amin, kGaussKl);
            const double s = s_app_general(amax, amin, tg.value, kGaussKl);
            // The generic form drops the +1/2 carried by the Gaussian
            // half-log-of-e convention; everything else agrees here.
            CHECK(std::fabs(s - (p.body + p.tail) + 0.5) <= 1e-3);
        }
    }
    SUBCASE("pinned bernoulli value") {
        const ExpFamArm amax = expfam_from_beta(beta_of(2.0 / 3.0, 40));
        const ExpFamArm amin = expfam_from_beta(beta_of(1.0 / 3.0, 10));
        const ThetaEq te = theta_eq_general(amax, amin, bernoulli_kl());
        REQUIRE(te.defined);
        CHECK(te.value == doctest::Approx(0.8493515131593942).epsilon(1e-13));
        CHECK(s_app_general(amax, amin, te.value, bernoulli_kl()) ==
              doctest::Approx(-1.6769121250092180).epsilon(1e-13));
    }
    SUBCASE("rejects a crossing point left of the divergence minimum") {
        const ExpFamArm amax = expfam_from_beta(beta_of(0.6, 40));
        const ExpFamArm amin = expfam_from_beta(beta_of(0.4, 10));
        CHECK_THROWS_AS(s_app_general(amax, amin, 0.3, bernoulli_kl()), std::invalid_argument);
    }
}

TEST_CASE("s_app_bernoulli_pair is monotone decreasing in the top count") {
    double prev = 1e300;
    for (std::int64_t n = 20; n <= 20000; n *= 2) {
        const double s = s_app_bernoulli_pair(beta_of(0.7, n), beta_of(0.3, 12));
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("two-point mixture weights sum to one exactly") {
    // w1 + w0 = (mean(n-1) - 1 + n - 2 - mean(n-1)) / (n-3) = 1.
    for (std::int64_t pulls = 1; pulls <= 9997; pulls += 29) {
        for (std::int64_t cum : {std::int64_t{0}, pulls / 3, pulls}) {
            const BetaPosterior b = beta_posterior(ArmStats{pulls, static_cast<double>(cum)});
            const double n = static_cast<double>(b.n_b);
            const double w1 = (b.mean_b * (n - 1.0) - 1.0) / (n - 3.0);
            const double w0 = (n - 2.0 - b.mean_b * (n - 1.0)) / (n - 3.0);
            CHECK(std::fabs(w1 + w0 - 1.0) <= 1e-14);
            CHECK(w1 == doctest::Approx(static_cast<double>(cum) / pulls).epsilon(1e-12));
        }
    }
}

TEST_CASE("delta_abs_bernoulli") {
    SUBCASE("zero empirical mean leaves only the failure branch") {
        const BetaPosterior bi = beta_of(1.0 / 3.0, 4);  // one pull, reward 0
        const BetaPosterior other = beta_of(0.6, 9);
        const double s_now = s_app_bernoulli_pair(bi, other);
        const BetaPosterior fail{(bi.mean_b * 3.0) / 4.0, 5};
        const double expected = std::fabs(s_app_bernoulli_pair(fail, other) - s_now);
        CHECK(delta_abs_bernoulli(bi, other, ArmRole::Min) ==
              doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("equal summaries are exchange-symmetric") {
        const BetaPosterior a = beta_of(0.5, 12);
        CHECK(delta_abs_bernoulli(a, a, ArmRole::Max) ==
              doctest::Approx(delta_abs_bernoulli(a, a, ArmRole::Min)).epsilon(1e-15));
    }
    SUBCASE("pinned values match an independent two-branch recomputation") {
        const BetaPosterior bmax = beta_of(2.0 / 3.0, 40);
        const BetaPosterior bmin = beta_of(1.0 / 3.0, 10);
        const auto recompute = [](const BetaPosterior& arm, const BetaPosterior& other,
                                  double s_now) {
            const double n = static_cast<double>(arm.n_b);
            const double w1 = (arm.mean_b * (n - 1.0) - 1.0) / (n - 3.0);
            const BetaPosterior up1{(arm.mean_b * (n - 1.0) + 1.0) / n, arm.n_b + 1};
            const BetaPosterior up0{arm.mean_b * (n - 1.0) / n, arm.n_b + 1};
            return std::fabs(w1 * s_app_bernoulli_pair(up1, other) +
                             (1.0 - w1) * s_app_bernoulli_pair(up0, other) - s_now);
        };
        const double s_now = s_app_bernoulli_pair(bmax, bmin);
        const double dmax = delta_abs_bernoulli(bmax, bmin, ArmRole::Max);
        const double dmin = delta_abs_bernoulli(bmin, bmax, ArmRole::Min);
        CHECK(dmax == doctest::Approx(recompute(bmax, bmin, s_now)).epsilon(1e-12));
        CHECK(dmin == doctest::Approx(recompute(bmin, bmax, s_now)).epsilon(1e-12));
        CHECK(dmax == doctest::Approx(0.012713935729021725).epsilon(1e-12));
        CHECK(dmin == doctest::Approx(0.00045024915430918211).epsilon(1e-12));
    }
    SUBCASE("always nonnegative") {
        std::mt19937_64 rng = make_rng(203);
        std::uniform_int_distribution<std::int64_t> pulls_d(1, 500);
        for (int i = 0; i < 500; ++i) {
            const std::int64_t p1 = pulls_d(rng), p2 = pulls_d(rng);
            std::uniform_int_distribution<std::int64_t> c1(0, p1), c2(0, p2);
            const BetaPosterior a = beta_posterior(ArmStats{p1, (double)c1(rng)});
            const BetaPosterior b = beta_posterior(ArmStats{p2, (double)c2(rng)});
            const ArmRole role = a.mean_b >= b.mean_b ? ArmRole::Max : ArmRole::Min;
            CHECK(delta_abs_bernoulli(a, b, role) >= 0.0);
        }
    }
}

TEST_CASE("delta_max_multiarm") {
    const BetaPosterior top = beta_of(0.7, 40);

    SUBCASE("two arms expose a single tail weight") {
        const BetaPosterior low = beta_of(0.3, 10);
        std::vector<BetaPosterior> arms{top, low};
        const ExpFamArm amax = expfam_from_beta(top);
        const ThetaEq te = theta_eq_general(amax, expfam_from_beta(low), bernoulli_kl());
        REQUIRE(te.defined);
        const double w = tail_weight_of(low, te.value);
        const double n = static_cast<double>(top.n_b);
        const double w1 = (top.mean_b * (n - 1.0) - 1.0) / (n - 3.0);
        const BetaPosterior up1{(top.mean_b * (n - 1.0) + 1.0) / n, top.n_b + 1};
        const BetaPosterior up0{top.mean_b * (n - 1.0) / n, top.n_b + 1};
        const double dh = std::fabs(w1 * body_entropy_of(up1) + (1.0 - w1) * body_entropy_of(up0) -
                                    body_entropy_of(top));
        CHECK(delta_max_multiarm(arms, 0) == doctest::Approx(std::fabs(1.0 - w) * dh).epsilon(1e-13));
    }
    SUBCASE("deeply dominated rivals leave the bare body increment") {
        std::vector<BetaPosterior> arms{beta_of(0.9, 2000), beta_of(0.05, 40), beta_of(0.1, 50)};
        const double n = 2000.0;
        const double w1 = (arms[0].mean_b * (n - 1.0) - 1.0) / (n - 3.0);
        const BetaPosterior up1{(arms[0].mean_b * (n - 1.0) + 1.0) / n, 2001};
        const BetaPosterior up0{arms[0].mean_b * (n - 1.0) / n, 2001};
        const double dh = std::fabs(w1 * body_entropy_of(up1) + (1.0 - w1) * body_entropy_of(up0) -
                                    body_entropy_of(arms[0]));
        CHECK(delta_max_multiarm(arms, 0) == doctest::Approx(dh).epsilon(1e-9));
    }
    SUBCASE("symmetric rivals double the single tail weight") {
        const BetaPosterior rival = beta_of(0.3, 10);
        std::vector<BetaPosterior> two{top, rival};
        std::vector<BetaPosterior> three{top, rival, rival};
        const ExpFamArm amax = expfam_from_beta(top);
        const ThetaEq te = theta_eq_general(amax, expfam_from_beta(rival), bernoulli_kl());
        REQUIRE(te.defined);
        const double w = tail_weight_of(rival, te.value);
        const double d2 = delta_max_multiarm(two, 0);
        const double d3 = delta_max_multiarm(three, 0);
        const double dh = d2 / std::fabs(1.0 - w);
        CHECK(d3 == doctest::Approx(std::fabs(1.0 - 2.0 * w) * dh).epsilon(1e-12));
    }
}
