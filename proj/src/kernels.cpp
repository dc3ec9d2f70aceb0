#include "cylpeak/kernels.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

#include "cylpeak/quadrature.hpp"

namespace cylpeak {

namespace {

constexpr double pi = std::numbers::pi;

double logistic(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

// Accurate and coarse panel sums; their gap is the error estimate.
template <class F>
void panel_pair(F&& f, double a, double b, double& fine, double& coarse) {
    fine += integrate_panel(f, a, b, gauss_legendre_rule(20));
    coarse += integrate_panel(f, a, b, gauss_legendre_rule(12));
}

}  // namespace

double ft_bessel_pole_expansion(double x, double y, double alpha, int n_temp) {
    if (n_temp < 1) throw DomainError("ft_bessel_kernel: n_temp must be >= 1");
    if (alpha < 0.0) throw DomainError("ft_bessel_kernel: alpha must be >= 0");
    const double pre = -0.5 * (x + y);
    if (pre < -740.0) return 0.0;
    const double a = 2.0 * std::exp(-0.5 * x), b = 2.0 * std::exp(-0.5 * y);
    const double lo = std::min(a, b), hi = std::max(a, b);
    cplx acc = 0.0;
    for (int k = 0; k < n_temp; ++k) {
        const double th = 0.5 * (pi * (2 * k + 1) / n_temp - pi);
        const cplx c = std::polar(1.0, th);
        acc += c * c * bessel_i(alpha, lo * c) * bessel_k(alpha, hi * c);
    }
    return std::exp(pre) * 2.0 * acc.real() / n_temp;
}

Estimate<double> ft_bessel_kernel(double x, double y, double alpha, int n_temp, const QuadratureSpec& quad,
                                  BesselMethod method) {
    if (n_temp < 1) throw DomainError("ft_bessel_kernel: n_temp must be >= 1");
    if (alpha < 0.0) throw DomainError("ft_bessel_kernel: alpha must be >= 0");
    if (method == BesselMethod::PoleExpansion || (method == BesselMethod::Auto && n_temp <= 2))
        return {ft_bessel_pole_expansion(x, y, alpha, n_temp), 1e-13};

    const double pre = std::exp(-0.5 * (x + y));
    if (pre == 0.0) return {0.0, 0.0};
    const double a = 2.0 * std::exp(-0.5 * x), b = 2.0 * std::exp(-0.5 * y);
    const double nn = 2.0 * n_temp;
    // Two tail bounds: |J| <= 1 everywhere, and |J_a(ar) J_a(br)| <= 2/(pi r sqrt(ab))
    // once both arguments pass the turning point.
    double R = 1e300, tail = 0.0;
    if (n_temp >= 2) {
        R = std::max(2.0, std::pow(2.0 * pre / ((nn - 2.0) * quad.tail_tol), 1.0 / (nn - 2.0)));
        tail = 2.0 * pre * std::pow(R, 2.0 - nn) / (nn - 2.0);
    }
    const double env = 4.0 * pre / (pi * std::sqrt(a * b) * (nn - 1.0));
    const double turn = (alpha + 2.0) * (alpha + 2.0) / std::min(a, b);
    const double R2 = std::max({turn, 2.0, std::pow(env / quad.tail_tol, 1.0 / (nn - 1.0))});
    if (R2 < R) {
        R = R2;
        tail = env * std::pow(R, 1.0 - nn);
    }
    auto f = [&](double r) {
        return bessel_j(alpha, a * r) * bessel_j(alpha, b * r) * 2.0 * r / (1.0 + std::pow(r, nn));
    };
    double fine = 0.0, coarse = 0.0;
    double r = 0.0;
    long panels = 0;
    while (r < R) {
        double h = std::min({pi / (a + b), 0.5, std::max(0.5 / n_temp, 0.3 * std::abs(r - 1.0))});
        h = std::min(h, R - r);
        panel_pair(f, r, r + h, fine, coarse);
        r += h;
        if (++panels > quad.max_panels)
            throw QuadratureFailure("ft_bessel_kernel: panel budget too small for the requested tail tolerance");
    }
    const double err = pre * std::abs(fine - coarse) + tail;
    const double val = pre * fine;
    if (err > std::max(quad.rel_tol * std::abs(val), 10.0 * quad.tail_tol))
        throw QuadratureFailure("ft_bessel_kernel: rel_tol not attained");
    return {val, err};
}

double hard_edge_bessel_exp(double x, double y, double alpha) {
    if (alpha < 0.0) throw DomainError("hard_edge_bessel_exp: alpha must be >= 0");
    const double pre = -0.5 * (x + y);
    if (pre < -740.0) return 0.0;
    const double X = std::exp(-x), Y = std::exp(-y);
    double B;
    if (std::max(X, Y) <= 4.0) {
        // int_0^1 J(2 sqrt(uX)) J(2 sqrt(uY)) du, termwise
        std::vector<double> am, bn;
        const double g0 = std::lgamma(alpha + 1.0);
        double ta = std::exp(0.5 * alpha * std::log(X) - g0), tb = std::exp(0.5 * alpha * std::log(Y) - g0);
        for (int m = 0; m < 45; ++m) {
            am.push_back(ta);
            bn.push_back(tb);
            ta *= -X / ((m + 1) * (alpha + m + 1));
            tb *= -Y / ((m + 1) * (alpha + m + 1));
        }
        B = 0.0;
        for (int m = 0; m < 45; ++m)
            for (int n = 0; n < 45; ++n) B += am[m] * bn[n] / (alpha + m + n + 1.0);
    } else if (std::abs(X - Y) <= 1e-9 * std::max(X, Y)) {
        const double s = 2.0 * std::sqrt(0.5 * (X + Y));
        const double j = bessel_j(alpha, s), jp = bessel_j_prime(alpha, s);
        B = jp * jp + (1.0 - alpha * alpha / (s * s)) * j * j;
    } else {
        const double sx = std::sqrt(X), sy = std::sqrt(Y);
        B = (bessel_j(alpha, 2 * sx) * sy * bessel_j_prime(alpha, 2 * sy) -
             sx * bessel_j_prime(alpha, 2 * sx) * bessel_j(alpha, 2 * sy)) /
            (X - Y);
    }
    return std::exp(pre) * B;
}

namespace {

struct AiryGrid {
    std::vector<double> v, w;
};

// v grid for the Airy integrals; xmin is the smallest shift that will be used.
AiryGrid airy_grid(double xmin, double beta, const QuadratureSpec& quad, int order) {
    const double v1 = std::log(1.0 / quad.tail_tol) / beta + 2.0;
    const double v2 = std::max(14.0 - xmin, 1.0);
    const GaussRule& g = gauss_legendre_rule(order);
    AiryGrid out;
    double v = -v1;
    int count = 0;
    while (v < v2) {
        double h = std::min(0.5, 1.5 / (std::sqrt(std::max(0.0, -(xmin + v))) + 1.0));
        if (std::abs(beta * v) < 40.0) h = std::min(h, 1.0 / beta);
        h = std::min(h, v2 - v);
        for (Eigen::Index i = 0; i < g.nodes.size(); ++i) {
            out.v.push_back(v + h * g.nodes[i]);
            out.w.push_back(h * g.weights[i]);
        }
        v += h;
        if (++count > quad.max_panels) throw QuadratureFailure("ft_airy_kernel: panel budget exceeded");
    }
    return out;
}

}  // namespace

Estimate<double> ft_airy_kernel(double x, double y, double beta, const QuadratureSpec& quad) {
    if (!(beta > 0.0)) throw DomainError("ft_airy_kernel: beta must be positive");
    auto sum = [&](int order) {
        const AiryGrid g = airy_grid(std::min(x, y), beta, quad, order);
        double acc = 0.0;
        for (std::size_t k = 0; k < g.v.size(); ++k)
            acc += g.w[k] * logistic(beta * g.v[k]) * airy_ai(x + g.v[k]) * airy_ai(y + g.v[k]);
        return acc;
    };
    const double fine = sum(20), coarse = sum(12);
    const double err = std::abs(fine - coarse) + quad.tail_tol;
    if (err > std::max(quad.rel_tol * std::abs(fine), 10.0 * quad.tail_tol))
        throw QuadratureFailure("ft_airy_kernel: rel_tol not attained");
    return {fine, err};
}

Eigen::MatrixXd ft_airy_kernel_matrix(const Eigen::VectorXd& xs, double beta, const QuadratureSpec& quad) {
    if (!(beta > 0.0)) throw DomainError("ft_airy_kernel: beta must be positive");
    const AiryGrid g = airy_grid(xs.minCoeff(), beta, quad, 20);
    const Eigen::Index m = xs.size(), nv = Eigen::Index(g.v.size());
    Eigen::MatrixXd phi(m, nv);
    Eigen::VectorXd wt(nv);
    for (Eigen::Index k = 0; k < nv; ++k) wt[k] = g.w[k] * logistic(beta * g.v[k]);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index k = 0; k < nv; ++k) phi(i, k) = airy_ai(xs[i] + g.v[k]);
    return phi * wt.asDiagonal() * phi.transpose();
}

double airy_kernel_zero_temp(double x, double y) {
    if (std::abs(x - y) <= 1e-9 * (1.0 + std::abs(x))) {
        const double m = 0.5 * (x + y);
        const double a = airy_ai(m), ap = airy_ai_prime(m);
        return ap * ap - m * a * a;
    }
    return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

}  // namespace cylpeak
