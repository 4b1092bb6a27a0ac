#include "aim/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace aim {

namespace {

// Newton iteration on the Hermite recurrence, highest root first.
GaussHermiteRule build_gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
    GaussHermiteRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double pim4 = 0.7511255444649424828587030047762276930510;  // pi^(-1/4)
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.x[1];
        else
            z = 2.0 * z - rule.x[i - 2];

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) <= 1e-15 * (1.0 + std::fabs(z))) break;
        }
        rule.x[i] = z;
        rule.x[n - 1 - i] = -z;
        rule.w[i] = 2.0 / (pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
    static std::mutex mu;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_hermite(n)).first;
    return it->second;
}

}  // namespace aim
