#pragma once

#include <cstddef>
#include <vector>

#include "aim/quadrature.hpp"

namespace aim {

// One posterior in a set over which the maximum is taken. Gaussian posteriors
// carry (mean, variance); Beta posteriors carry (alpha, beta).
struct Posterior {
    enum class Family { Gaussian, Beta };
    Family family;
    double p1;
    double p2;

    static Posterior gaussian(double mean, double variance);
    static Posterior beta(double alpha, double beta);

    double pdf(double theta) const;
    double log_pdf(double theta) const;
    double cdf(double theta) const;
    double mean() const;
    double stddev() const;
};

struct PosteriorSet {
    std::vector<Posterior> posteriors;
};

// Density of the largest posterior mean: sum_k pdf_k(theta) prod_{j!=k} cdf_j(theta).
double pmax_density(double theta, const PosteriorSet& set);

// Differential entropy of pmax by adaptive quadrature over the truncated
// support. Throws std::runtime_error when the subdivision budget runs out.
double smax_exact(const PosteriorSet& set, const QuadratureSpec& spec = {});

// Expected change of smax_exact after one more pull of the given Gaussian
// arm: the predicted reward is Gaussian(mean_arm, sigma2) and the posterior
// update is mean <- (mean N + mu)/(N+1), N <- N+1 with N = sigma2/variance.
// The outer expectation uses a Gauss-Hermite rule.
double expected_increment_exact(const PosteriorSet& set, std::size_t arm, double sigma2,
                                const QuadratureSpec& spec = {}, int gh_nodes = 40);

struct PartitionIntegrals {
    double s_body_num;
    double s_tail_num;
};

// Body/tail split of the entropy of a two-posterior set at the cut teq:
// tail = -int_{teq}^{sup} pdf_min ln pdf_min, body = -int cdf_min pdf_max ln pdf_max.
// The max/min roles follow the posterior means (tie: lower index is max).
PartitionIntegrals partition_integrals(const PosteriorSet& set, double teq,
                                       const QuadratureSpec& spec = {});

}  // namespace aim
