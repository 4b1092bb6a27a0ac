#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace aim {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    double truncation_sds = 10.0;  // half-width, in posterior standard deviations
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F&& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double x = h * kKronrodX[j];
        double fv;
        if (j == 7) {
            fv = f(c);
            resk += kKronrodW[7] * fv;
            resg += kGaussW[3] * fv;
        } else {
            fv = f(c - x) + f(c + x);
            resk += kKronrodW[j] * fv;
            if (j % 2 == 1) resg += kGaussW[j / 2] * fv;
        }
    }
    value = resk * h;
    const double diff = std::fabs((resk - resg) * h);
    // QUADPACK-style sharpened estimate of the Kronrod error.
    error = diff;
    if (diff > 0.0) {
        const double scale = std::pow(200.0 * diff / (std::fabs(value) + diff), 1.5);
        if (scale < 1.0) error = diff * scale;
    }
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

// Globally adaptive bisection with a GK15 rule per panel. breakpoints seed
// the initial partition (values outside (a,b) are ignored).
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec,
                              std::span<const double> breakpoints = {}) {
    QuadResult out;
    if (!(a < b)) {
        out.converged = true;
        return out;
    }
    std::vector<double> edges{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<detail::Panel> panels;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        detail::Panel p{edges[i], edges[i + 1], 0.0, 0.0};
        detail::gk15(f, p.a, p.b, p.value, p.error);
        total += p.value;
        total_err += p.error;
        panels.push(p);
    }
    out.subdivisions = static_cast<int>(edges.size()) - 1;

    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (out.subdivisions >= spec.max_subdivisions || panels.empty()) {
            out.value = total;
            out.error = total_err;
            return out;  // converged stays false
        }
        detail::Panel worst = panels.top();
        panels.pop();
        total -= worst.value;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        detail::Panel left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        total += left.value + right.value;
        total_err += left.error + right.error;
        panels.push(left);
        panels.push(right);
        ++out.subdivisions;
    }
    out.value = total;
    out.error = total_err;
    out.converged = true;
    return out;
}

// Gauss-Hermite rule for weight exp(-x^2); sum(w) = sqrt(pi). Rules are
// computed once per order and cached.
struct GaussHermiteRule {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussHermiteRule& gauss_hermite(int n);

// Expectation of f under N(mean, variance) using an n-point rule.
template <class F>
double gauss_hermite_expectation(F&& f, double mean, double variance, int n) {
    const GaussHermiteRule& rule = gauss_hermite(n);
    const double scale = std::sqrt(2.0 * variance);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) acc += rule.w[i] * f(mean + scale * rule.x[i]);
    return acc / std::sqrt(std::acos(-1.0));
}

}  // namespace aim
