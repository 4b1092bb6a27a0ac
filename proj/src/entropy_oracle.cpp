#include "aim/entropy_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "aim/distributions.hpp"

namespace aim {

namespace {

constexpr double kDensityFloor = 1e-300;  // below this, x ln x is taken as 0

double plogp(double p) { return p > kDensityFloor ? -p * std::log(p) : 0.0; }

// Truncated integration window and panel seeds for a posterior set.
struct Domain {
    double lo, hi;
    std::vector<double> breaks;
};

Domain domain_of(const PosteriorSet& set, const QuadratureSpec& spec) {
    Domain d{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), {}};
    for (const Posterior& p : set.posteriors) {
        double lo, hi;
        if (p.family == Posterior::Family::Beta) {
            lo = 0.0;
            hi = 1.0;
        } else {
            lo = p.mean() - spec.truncation_sds * p.stddev();
            hi = p.mean() + spec.truncation_sds * p.stddev();
        }
        d.lo = std::min(d.lo, lo);
        d.hi = std::max(d.hi, hi);
        d.breaks.push_back(p.mean());
        d.breaks.push_back(p.mean() - 2.0 * p.stddev());
        d.breaks.push_back(p.mean() + 2.0 * p.stddev());
    }
    return d;
}

[[noreturn]] void throw_not_converged(const char* op, const QuadResult& r) {
    throw std::runtime_error(std::string(op) + ": quadrature did not converge (error estimate " +
                             std::to_string(r.error) + " after " + std::to_string(r.subdivisions) +
                             " subdivisions)");
}

}  // namespace

Posterior Posterior::gaussian(double mean, double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("Posterior::gaussian: variance must be > 0");
    return Posterior{Family::Gaussian, mean, variance};
}

Posterior Posterior::beta(double alpha, double beta) {
    if (!(alpha >= 1.0) || !(beta >= 1.0))
        throw std::invalid_argument("Posterior::beta: parameters must be >= 1");
    return Posterior{Family::Beta, alpha, beta};
}

double Posterior::pdf(double theta) const {
    return family == Family::Gaussian ? norm_pdf(theta, p1, p2) : beta_pdf(theta, p1, p2);
}

double Posterior::log_pdf(double theta) const {
    return family == Family::Gaussian ? norm_log_pdf(theta, p1, p2) : beta_log_pdf(theta, p1, p2);
}

double Posterior::cdf(double theta) const {
    return family == Family::Gaussian ? norm_cdf(theta, p1, p2) : beta_cdf(theta, p1, p2);
}

double Posterior::mean() const {
    return family == Family::Gaussian ? p1 : p1 / (p1 + p2);
}

double Posterior::stddev() const {
    if (family == Family::Gaussian) return std::sqrt(p2);
    const double s = p1 + p2;
    return std::sqrt(p1 * p2 / (s * s * (s + 1.0)));
}

double pmax_density(double theta, const PosteriorSet& set) {
    const auto& ps = set.posteriors;
    double total = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        double term = ps[k].pdf(theta);
        for (std::size_t j = 0; j < ps.size() && term > 0.0; ++j)
            if (j != k) term *= ps[j].cdf(theta);
        total += term;
    }
    return total;
}

double smax_exact(const PosteriorSet& set, const QuadratureSpec& spec) {
    if (set.posteriors.empty()) throw std::invalid_argument("smax_exact: empty posterior set");
    const Domain d = domain_of(set, spec);
    const auto f = [&](double theta) { return plogp(pmax_density(theta, set)); };
    const QuadResult r = integrate_adaptive(f, d.lo, d.hi, spec, d.breaks);
    if (!r.converged) throw_not_converged("smax_exact", r);
    return r.value;
}

double expected_increment_exact(const PosteriorSet& set, std::size_t arm, double sigma2,
                                const QuadratureSpec& spec, int gh_nodes) {
    if (arm >= set.posteriors.size())
        throw std::invalid_argument("expected_increment_exact: arm index out of range");
    const Posterior& a = set.posteriors[arm];
    if (a.family != Posterior::Family::Gaussian)
        throw std::invalid_argument("expected_increment_exact: only Gaussian arms supported");
    const double n = sigma2 / a.p2;
    const double base = smax_exact(set, spec);
    const auto updated_entropy = [&](double mu) {
        PosteriorSet next = set;
        next.posteriors[arm] = Posterior::gaussian((a.p1 * n + mu) / (n + 1.0), sigma2 / (n + 1.0));
        return smax_exact(next, spec);
    };
    return gauss_hermite_expectation(updated_entropy, a.p1, sigma2, gh_nodes) - base;
}

PartitionIntegrals partition_integrals(const PosteriorSet& set, double teq,
                                       const QuadratureSpec& spec) {
    if (set.posteriors.size() != 2)
        throw std::invalid_argument("partition_integrals: exactly two posteriors required");
    const Posterior& first = set.posteriors[0];
    const Posterior& second = set.posteriors[1];
    const bool first_is_max = first.mean() >= second.mean();
    const Posterior& pmaxp = first_is_max ? first : second;
    const Posterior& pminp = first_is_max ? second : first;

    PosteriorSet minset{{pminp}};
    const Domain dmin = domain_of(minset, spec);
    PartitionIntegrals out{0.0, 0.0};
    if (teq < dmin.hi) {
        const double lo = std::max(teq, dmin.lo - 2.0 * pminp.stddev());
        const auto ftail = [&](double theta) { return plogp(pminp.pdf(theta)); };
        const QuadResult rt = integrate_adaptive(ftail, lo, dmin.hi, spec, dmin.breaks);
        if (!rt.converged) throw_not_converged("partition_integrals[tail]", rt);
        out.s_tail_num = rt.value;
    }

    PosteriorSet maxset{{pmaxp}};
    const Domain dmax = domain_of(maxset, spec);
    const auto fbody = [&](double theta) { return pminp.cdf(theta) * plogp(pmaxp.pdf(theta)); };
    const QuadResult rb = integrate_adaptive(fbody, dmax.lo, dmax.hi, spec, dmax.breaks);
    if (!rb.converged) throw_not_converged("partition_integrals[body]", rb);
    out.s_body_num = rb.value;
    return out;
}

}  // namespace aim
