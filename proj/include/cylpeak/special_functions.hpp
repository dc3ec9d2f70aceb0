#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <type_traits>

#include "cylpeak/errors.hpp"

namespace cylpeak {

struct Tolerance {
    double abs_tol = 1e-12;
    std::int64_t max_terms = 1'000'000;
};

// A value together with an absolute error estimate.
template <class Scalar>
struct Estimate {
    Scalar value{};
    double error = 0.0;
};

using cplx = std::complex<double>;

namespace detail {
template <class T> struct is_complex : std::false_type {};
template <class T> struct is_complex<std::complex<T>> : std::true_type {};
}  // namespace detail

// (x;q)_n = prod_{0<=i<n} (1 - x q^i)
template <class Scalar>
Scalar q_pochhammer(Scalar x, double q, std::int64_t n) {
    Scalar prod(1.0);
    double qi = 1.0;
    for (std::int64_t i = 0; i < n; ++i) {
        prod *= Scalar(1.0) - x * qi;
        qi *= q;
    }
    return prod;
}

// Sum of log(1 - x q^i) over i >= 0. The product is cut once the remainder
// bound |x q^i| / ((1-q)(1-|x q^i|)) drops below tol.abs_tol; that bound is
// returned as the error (on the log scale).
template <class Scalar>
Estimate<Scalar> log_q_pochhammer_inf(Scalar x, double q, Tolerance tol = {}) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("log_q_pochhammer_inf: q must lie in [0,1)");
    Scalar acc(0.0);
    double qi = 1.0;
    for (std::int64_t i = 0; i < tol.max_terms; ++i) {
        const Scalar xi = x * qi;
        const double ax = std::abs(xi);
        const double bound = ax < 1.0 ? ax / ((1.0 - q) * (1.0 - ax)) : 1.0;
        if (bound < tol.abs_tol || ax == 0.0) return {acc, bound};
        const Scalar f = Scalar(1.0) - xi;
        if (f == Scalar(0.0)) throw NonConvergent("q-Pochhammer: vanishing factor");
        if constexpr (detail::is_complex<Scalar>::value) {
            acc += std::log(f);
        } else {
            if (f < 0.0) throw NonConvergent("q-Pochhammer: negative factor has no real log");
            acc += std::log1p(-xi);
        }
        qi *= q;
    }
    throw NonConvergent("q-Pochhammer: max_terms exceeded");
}

// (x;q)_infinity with the truncation error estimate on the value scale.
template <class Scalar>
Estimate<Scalar> q_pochhammer_inf(Scalar x, double q, Tolerance tol = {}) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("q_pochhammer_inf: q must lie in [0,1)");
    Scalar prod(1.0);
    double qi = 1.0;
    for (std::int64_t i = 0; i < tol.max_terms; ++i) {
        const Scalar xi = x * qi;
        const double ax = std::abs(xi);
        const double bound = ax < 1.0 ? ax / ((1.0 - q) * (1.0 - ax)) : 1.0;
        if (bound < tol.abs_tol || ax == 0.0) return {prod, std::abs(prod) * bound};
        const Scalar f = Scalar(1.0) - xi;
        if (f == Scalar(0.0)) throw NonConvergent("q-Pochhammer: vanishing factor");
        prod *= f;
        qi *= q;
    }
    throw NonConvergent("q-Pochhammer: max_terms exceeded");
}

// theta_3(t;u) = sum_{c in Z} t^c u^{c^2/2}
double jacobi_theta3(double t, double u, Tolerance tol = {});
cplx jacobi_theta3(cplx t, double u, Tolerance tol = {});

// Triple-product form (u;u)(-sqrt(u) t;u)(-sqrt(u)/t;u), kept separate from the sum.
double theta3_product(double t, double u, Tolerance tol = {});

// theta_u(x) = (x;u)(u/x;u); exactly zero when x is an integer power of u.
double theta_mult(double x, double u, Tolerance tol = {});
cplx theta_mult(cplx x, double u, Tolerance tol = {});

// Bessel J of real order alpha >= 0 on x >= 0.
double bessel_j(double alpha, double x);
double bessel_j_prime(double alpha, double x);
double bessel_j_series(double alpha, double x);
// Hankel expansion; throws NonConvergent if the terms never get small.
double bessel_j_asymptotic(double alpha, double x);
// Schlafli integral, used between the two expansions.
double bessel_j_integral(double alpha, double x);
// Mellin-Barnes integral of Gamma(-Z)(X/2)^{alpha+2Z}/Gamma(alpha+1+Z) over a
// line Re Z = sigma < 0 whose ends are bent into the right half plane.
double bessel_j_mellin_barnes(double alpha, double x);

// Modified Bessel functions of real order nu >= 0 and complex argument Re z > 0.
cplx bessel_i(double nu, cplx z);
cplx bessel_k(double nu, cplx z);

double airy_ai(double x);
double airy_ai_prime(double x);
double airy_ai_series(double x);
double airy_ai_prime_series(double x);
double airy_ai_asymptotic(double x);
double airy_ai_prime_asymptotic(double x);

double dilog(double x);

// Principal branch of log Gamma, continuous off the negative real axis.
cplx log_gamma(cplx z);

}  // namespace cylpeak
