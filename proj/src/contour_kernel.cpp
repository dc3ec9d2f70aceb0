#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cylpeak/kernels.hpp"
#include "cylpeak/quadrature.hpp"

namespace cylpeak {

namespace {

constexpr double pi = std::numbers::pi;

double dist_to_int(double v) { return std::abs(v - std::round(v)); }

double pick_eta(double c, int n, double eta) {
    if (eta > 0.0 && eta < c && 2.0 * eta < n && dist_to_int(c + eta) >= 0.1) return eta;
    for (double e : {0.25, 0.125, 0.375, 0.0625, 0.1875, 0.3125, 0.4375}) {
        const double ee = e * std::min(1.0, 2.0 * c);
        if (ee < c && 2.0 * ee < n && dist_to_int(c + ee) >= 0.1) return ee;
    }
    throw DomainError("bessel_limit_contour_kernel: no admissible eta");
}

struct Pair {
    cplx fine = 0.0, coarse = 0.0;
};

template <class F>
void add_panel(Pair& acc, F&& f, double a, double b) {
    acc.fine += integrate_panel(f, a, b, gauss_legendre_rule(20));
    acc.coarse += integrate_panel(f, a, b, gauss_legendre_rule(12));
}

}  // namespace

Estimate<double> bessel_limit_contour_kernel(double x, double y, double alpha, int n_temp, double eta) {
    if (n_temp < 1) throw DomainError("bessel_limit_contour_kernel: n_temp must be >= 1");
    if (alpha < 0.0) throw DomainError("bessel_limit_contour_kernel: alpha must be >= 0");
    const double c = 0.5 * (alpha + 1.0);
    const int N = n_temp;
    eta = pick_eta(c, N, eta);

    auto logf = [&](cplx w) { return log_gamma(c + w) - log_gamma(c - w); };
    auto sine = [&](cplx s) { return pi / (double(N) * std::sin(pi * s / double(N))); };

    // Line terms: I_j = (1/2 pi i) int e^{y w} f(w) S(c + j - w) dw, j < N.
    const double T = N * (std::log(2.0 * pi / N + 1.0) + 40.0) / pi;
    std::vector<Pair> line(N);
    for (int j = 0; j < N; ++j) {
        double s = -T;
        while (s < T) {
            const double h = std::min({0.5, 1.5 / (std::abs(y) + 2.0 * std::log(2.0 + std::abs(s)) + 1.0), T - s});
            add_panel(
                line[j],
                [&](double t) {
                    const cplx w(-eta, t);
                    return std::exp(y * w + logf(w)) * sine(c + j - w);
                },
                s, s + h);
            s += h;
        }
        line[j].fine /= 2.0 * pi;
        line[j].coarse /= 2.0 * pi;
    }
    // sum_k (-1)^k e^{-x(c+k)} / (k! Gamma(2c+k)) I_k with I_{k+N} = -I_k
    Pair total;
    double big = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double lc = -x * (c + k) - std::lgamma(k + 1.0) - std::lgamma(2.0 * c + k);
        const double coef = ((k % 2) ? -1.0 : 1.0) * ((k / N) % 2 ? -1.0 : 1.0) * std::exp(lc);
        total.fine += coef * line[k % N].fine;
        total.coarse += coef * line[k % N].coarse;
        big = std::max(big, std::abs(coef));
        if (k > 10 && std::abs(coef) < 1e-18 * big && std::exp(-x) < (k + 1.0) * (2.0 * c + k)) break;
    }

    // Rational terms: (1/2 pi i) int e^{(y-x) w} / [(c+w)_n (c-w-n)_n] dw, n = N m.
    const double d = y - x;
    const double H = 1.0;
    const double dir = d >= 0.0 ? -1.0 : 1.0;  // rays run left for d >= 0
    for (int m = 1; m < 400; ++m) {
        const int n = N * m;
        auto rat = [&](cplx w) {
            cplx den = 1.0;
            for (int i = 0; i < n; ++i) den *= (c + w + double(i)) * (c - w - double(n) + double(i));
            return std::exp(d * w) / den;
        };
        Pair r;
        // vertical segment, parametrised by Im w; dw = i dt
        for (int k = 0; k < 4; ++k)
            add_panel(r, [&](double t) { return rat(cplx(-eta, t)) * cplx(0.0, 1.0); }, -H + 0.5 * H * k,
                      -H + 0.5 * H * (k + 1));
        // rays w = -eta + i(+-H) + dir tau
        auto rays = [&](double tau) {
            const cplx up = rat(cplx(-eta + dir * tau, H));
            const cplx dn = rat(cplx(-eta + dir * tau, -H));
            // upper ray leaves the segment top, lower ray enters the segment bottom
            return dir * (up - dn);
        };
        const double t0 = double(n) + 2.0 * c + 20.0;
        for (double a = 0.0; a < t0 - 1e-12; a += 0.5) add_panel(r, rays, a, a + 0.5);
        // tail tau = t0 + t0 s/(1-s)
        for (int k = 0; k < 8; ++k)
            add_panel(
                r,
                [&](double s) {
                    if (s >= 1.0) return cplx(0.0);
                    const double tau = t0 + t0 * s / (1.0 - s);
                    return rays(tau) * (t0 / ((1.0 - s) * (1.0 - s)));
                },
                k / 8.0, (k + 1) / 8.0);
        const double sgn = (m % 2) ? -1.0 : 1.0;
        const double ex = std::exp(-x * n);
        const cplx two_pi_i(0.0, 2.0 * pi);
        total.fine -= sgn * ex * r.fine / two_pi_i;
        total.coarse -= sgn * ex * r.coarse / two_pi_i;
        if (std::abs(ex * r.fine) < 1e-18 && m > 1) break;
    }
    const double err = std::abs(total.fine - total.coarse) + 1e-14;
    return {total.fine.real(), err};
}

}  // namespace cylpeak
