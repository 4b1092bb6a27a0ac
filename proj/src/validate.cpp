#include "aim/validate.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "aim/distributions.hpp"
#include "aim/entropy_gaussian.hpp"
#include "aim/entropy_oracle.hpp"
#include "aim/rng.hpp"

namespace aim {

namespace {

EntropyState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> nmin_d(1, 1000);
    std::uniform_real_distribution<double> s2_d(0.25, 4.0);
    const std::int64_t nmin = nmin_d(rng);
    std::uniform_int_distribution<std::int64_t> nmax_d(nmin + 1, 1000000);
    const std::int64_t nmax = nmax_d(rng);
    double a = u01(rng), b = u01(rng);
    if (a < b) std::swap(a, b);
    return EntropyState{a, nmax, b, nmin, s2_d(rng)};
}

CheckResult check_closed_forms(const ValidationOptions& opt) {
    std::mt19937_64 rng = make_rng(stream_key({opt.seed, 1}));
    double worst = 0.0;
    QuadratureSpec spec;
    for (int i = 0; i < opt.closed_form_states; ++i) {
        const EntropyState st = random_state(rng);
        const ThetaEq te = theta_eq(st);
        const PosteriorSet set{{Posterior::gaussian(st.mean_max, st.sigma2 / st.n_max),
                                Posterior::gaussian(st.mean_min, st.sigma2 / st.n_min)}};
        const PartitionIntegrals num = partition_integrals(set, te.value, spec);
        const double tail = s_tail_exact(st, te.value) + opt.s_tail_perturb;
        const double body = s_body_exact(st);
        worst = std::max(worst, std::fabs(tail - num.s_tail_num));
        worst = std::max(worst, std::fabs(body - num.s_body_num));
    }
    return {"tail/body closed forms vs quadrature", worst <= 1e-8, worst, 1e-8};
}

CheckResult check_erf_identity(const ValidationOptions& opt) {
    std::mt19937_64 rng = make_rng(stream_key({opt.seed, 2}));
    std::uniform_real_distribution<double> th(-2.0, 2.0);
    std::uniform_real_distribution<double> vr(0.01, 4.0);
    double worst = 0.0;
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-12;
    for (int i = 0; i < opt.erf_identity_tuples; ++i) {
        const double t1 = th(rng), t2 = th(rng), v1 = vr(rng), v2 = vr(rng);
        const auto f = [&](double x) {
            return (1.0 + std::erf((x - t1) / std::sqrt(2.0 * v1))) * norm_pdf(x, t2, v2);
        };
        const double half = 12.0 * std::sqrt(v2);
        const double lhs = integrate_adaptive(f, t2 - half, t2 + half, spec).value;
        const double rhs = 1.0 + std::erf((t2 - t1) / std::sqrt(2.0 * (v1 + v2)));
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return {"erf product-integral identity", worst <= 1e-9, worst, 1e-9};
}

CheckResult check_theta_eq_residual(const ValidationOptions& opt) {
    std::mt19937_64 rng = make_rng(stream_key({opt.seed, 3}));
    double worst = 0.0;
    for (int i = 0; i < opt.theta_eq_states; ++i) {
        const EntropyState st = random_state(rng);
        const ThetaEq te = theta_eq(st);
        // The closed form is the exact root of the truncated balance; the
        // residual is evaluated in extended precision so it measures the
        // double-precision root, not the check's own rounding.
        const long double th = te.value;
        const long double s2 = st.sigma2;
        const long double r = st.n_min * (th - st.mean_min) * (th - st.mean_min) / (2.0L * s2) -
                              st.n_max * (th - st.mean_max) * (th - st.mean_max) / (2.0L * s2) +
                              0.5L * (std::log((long double)st.n_max) - std::log((long double)st.n_min));
        const double rel = static_cast<double>(std::fabs(r) / (1.0L + th * th));
        worst = std::max(worst, rel);
    }
    return {"theta_eq residual in truncated balance", worst <= 1e-9, worst, 1e-9};
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& options) {
    ValidationReport report;
    report.checks.push_back(check_closed_forms(options));
    report.checks.push_back(check_erf_identity(options));
    report.checks.push_back(check_theta_eq_residual(options));
    return report;
}

std::string format_report(const ValidationReport& report) {
    std::string out;
    for (const CheckResult& c : report.checks) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "[%s] %-42s worst=%.3e tol=%.0e\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst, c.tol);
        out += buf;
    }
    return out;
}

}  // namespace aim
