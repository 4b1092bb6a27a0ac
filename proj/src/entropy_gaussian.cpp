#include "aim/entropy_gaussian.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTwoPiE = kTwoPi * std::numbers::e;
}  // namespace

ThetaEq theta_eq(const EntropyState& st) {
    if (st.n_max <= st.n_min) return {std::numeric_limits<double>::quiet_NaN(), false};
    const double nmax = static_cast<double>(st.n_max);
    const double nmin = static_cast<double>(st.n_min);
    const double gap = st.mean_max - st.mean_min;
    const double dn = nmax - nmin;
    // ln(nmax) - ln(nmin) instead of ln(nmax/nmin): counts can reach 1e6 and
    // the quotient would round before the log.
    const double log_ratio = std::log(nmax) - std::log(nmin);
    double arg = nmax * nmin * gap * gap / (dn * dn) + st.sigma2 * log_ratio / dn;
    if (arg < 0.0) arg = 0.0;  // cancellation can undershoot by 1 ulp
    return {st.mean_max + nmin * gap / dn + std::sqrt(arg), true};
}

double s_tail_exact(const EntropyState& st, double teq) {
    const double n = static_cast<double>(st.n_min);
    const double g = teq - st.mean_min;
    const double x = std::sqrt(n) * g / std::sqrt(2.0 * st.sigma2);
    return 0.25 * std::log(kTwoPiE * st.sigma2 / n) * std::erfc(x) +
           std::sqrt(n) * g / (2.0 * std::sqrt(kTwoPi * st.sigma2)) * std::exp(-n * g * g / (2.0 * st.sigma2));
}

double s_body_exact(const EntropyState& st) {
    const double nmax = static_cast<double>(st.n_max);
    const double nmin = static_cast<double>(st.n_min);
    const double g = st.mean_max - st.mean_min;
    const double s2 = st.sigma2;
    const double nsum = nmax + nmin;
    const double first = 0.5 * std::log(kTwoPiE * s2 / nmax) *
                         (1.0 - 0.5 * std::erfc(std::sqrt(nmin * nmax) * g / std::sqrt(2.0 * s2 * nsum)));
    const double second = std::sqrt(nmax) * nmin * std::sqrt(nmin) * g /
                          (2.0 * std::sqrt(s2) * std::sqrt(kTwoPi) * nsum * std::sqrt(nsum)) *
                          std::exp(-nmin * nmax * g * g / (2.0 * s2 * nsum));
    return first - second;
}

SAppParts s_app_parts(double n_max, double n_min, double gap, double sigma2) {
    const double x = std::sqrt(n_min) * gap / std::sqrt(2.0 * sigma2);
    const double body = 0.5 * std::log(kTwoPiE * sigma2 / n_max) * (1.0 - 0.5 * std::erfc(x));
    const double tail = std::sqrt(n_min) * gap / (2.0 * std::sqrt(kTwoPi * sigma2)) *
                        std::exp(-n_min * gap * gap / (2.0 * sigma2));
    return {body, tail};
}

SAppParts s_app_components(const EntropyState& st) {
    const ThetaEq te = theta_eq(st);
    if (!te.defined)
        return {0.5 * std::log(kTwoPiE * st.sigma2 / static_cast<double>(st.n_max)), 0.0};
    return s_app_parts(static_cast<double>(st.n_max), static_cast<double>(st.n_min),
                       te.value - st.mean_min, st.sigma2);
}

ArmIncrements increment_closed_form(const EntropyState& st) {
    const ThetaEq te = theta_eq(st);
    if (!te.defined)
        throw std::invalid_argument("increment_closed_form: theta_eq undefined (n_max <= n_min)");
    return increment_closed_form_at(st, te.value);
}

ArmIncrements increment_closed_form_at(const EntropyState& st, double teq) {
    const double M = static_cast<double>(st.n_max);
    const double N = static_cast<double>(st.n_min);
    const double s2 = st.sigma2;
    const double g = teq - st.mean_min;
    const SAppParts now = s_app_parts(M, N, g, s2);

    // Pulling the top arm shifts teq linearly with the reward; averaging over
    // the Gaussian reward tightens the erfc argument by sqrt(1 + N/(M+1)^2).
    const double r = 1.0 + N / ((M + 1.0) * (M + 1.0));
    const double body_max = 0.5 * std::log(kTwoPiE * s2 / (M + 1.0)) *
                            (1.0 - 0.5 * std::erfc(std::sqrt(N) * g / (std::sqrt(2.0 * s2) * std::sqrt(r))));
    const double tail_max = std::exp(-N * g * g / (2.0 * s2 * r)) *
                            std::sqrt(N / (8.0 * std::numbers::pi * s2)) * g / (r * std::sqrt(r));

    // Pulling the low arm moves its posterior mean; the averaged erfc argument
    // becomes (N+1) g / sqrt(2 sigma2 (N+2)).
    const double body_min = 0.5 * std::log(kTwoPiE * s2 / M) *
                            (1.0 - 0.5 * std::erfc((N + 1.0) * g / std::sqrt(2.0 * s2 * (N + 2.0))));
    const double tail_min = std::exp(-(N + 1.0) * (N + 1.0) / (N + 2.0) * g * g / (2.0 * s2)) *
                            (N + 1.0) * (N + 1.0) * g /
                            (std::sqrt(8.0 * std::numbers::pi * s2) * (N + 2.0) * std::sqrt(N + 2.0));

    return {(body_max - now.body) + (tail_max - now.tail),
            (body_min - now.body) + (tail_min - now.tail)};
}

double delta_simplified(const EntropyState& st) {
    assert(st.n_max > st.n_min);
    const ThetaEq te = theta_eq(st);
    const double M = static_cast<double>(st.n_max);
    const double N = static_cast<double>(st.n_min);
    const double s2 = st.sigma2;
    const double lead = -0.5 * std::log1p(1.0 / M);
    if (!te.defined) return lead;
    const double g = te.value - st.mean_min;

    const double x = std::sqrt(N) * g / std::sqrt(2.0 * s2);
    const double erfc_term = std::erfc(x) / (4.0 * M);
    const double prefac = std::sqrt(N) * g / std::sqrt(kTwoPi * s2) * std::exp(-N * g * g / (2.0 * s2));
    const double bracket = 0.25 * std::log(M / (kTwoPiE * s2)) * (1.0 / (N * N) + N / (M * M)) +
                           0.5 / N - 0.75 * N / (M * M) +
                           (N * N / (M * M) + 1.0 / N) * g * g / (4.0 * s2);
    return lead + erfc_term + prefac * bracket;
}

}  // namespace aim
