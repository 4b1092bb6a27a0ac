#include "aim/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aim {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454835606594728112353;

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) return h;
    }
    throw std::runtime_error("betacf: continued fraction did not converge");
}
}  // namespace

double norm_pdf(double x, double mean, double variance) {
    const double d = x - mean;
    return std::exp(-d * d / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double norm_log_pdf(double x, double mean, double variance) {
    const double d = x - mean;
    return -0.5 * (kLogTwoPi + std::log(variance)) - d * d / (2.0 * variance);
}

double norm_cdf(double x, double mean, double variance) {
    return 0.5 * std::erfc((mean - x) / std::sqrt(2.0 * variance));
}

double lbeta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double beta_log_pdf(double x, double a, double b) {
    if (x <= 0.0 || x >= 1.0) return -std::numeric_limits<double>::infinity();
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lbeta(a, b);
}

double beta_pdf(double x, double a, double b) {
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0) return a < 1.0 ? std::numeric_limits<double>::infinity() : (a == 1.0 ? b : 0.0);
    if (x == 1.0) return b < 1.0 ? std::numeric_limits<double>::infinity() : (b == 1.0 ? a : 0.0);
    return std::exp(beta_log_pdf(x, a, b));
}

double beta_cdf(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lfront = a * std::log(x) + b * std::log1p(-x) - lbeta(a, b);
    // The continued fraction converges fast only left of the mean cut.
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(lfront) * betacf(a, b, x) / a;
    return 1.0 - std::exp(lfront) * betacf(b, a, 1.0 - x) / b;
}

}  // namespace aim
