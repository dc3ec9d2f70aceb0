#include "cylpeak/special_functions.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <vector>

#include "cylpeak/quadrature.hpp"

namespace cylpeak {

namespace {

constexpr double pi = std::numbers::pi;

template <class T>
T theta3_sum(T t, double u, Tolerance tol) {
    if (!(u >= 0.0 && u < 1.0)) throw NonConvergent("jacobi_theta3: u must lie in [0,1)");
    if (u == 0.0) return T(1.0);
    const T lt = std::log(t);
    const double lu = std::log(u);
    // beyond c0 the two-sided terms are monotone decreasing in |c|
    const double c0 = std::abs(std::real(lt)) / -lu + 1.0;
    T acc(1.0);
    for (std::int64_t c = 1; c < tol.max_terms; ++c) {
        const double quad = 0.5 * double(c) * double(c) * lu;
        const T up = std::exp(double(c) * lt + quad);
        const T dn = std::exp(-double(c) * lt + quad);
        acc += up + dn;
        if (double(c) > c0 && std::abs(up) + std::abs(dn) < tol.abs_tol * 1e-3) return acc;
    }
    throw NonConvergent("jacobi_theta3: max_terms exceeded");
}

bool is_power_of(double x, double u) {
    if (x <= 0.0) return false;
    const double j = std::log(x) / std::log(u);
    const double jr = std::round(j);
    return std::abs(x - std::pow(u, jr)) <= 1e-14 * x;
}

}  // namespace

double jacobi_theta3(double t, double u, Tolerance tol) {
    if (!(t > 0.0)) throw DomainError("jacobi_theta3: t must be positive");
    return theta3_sum<double>(t, u, tol);
}

cplx jacobi_theta3(cplx t, double u, Tolerance tol) {
    if (t == cplx(0.0)) throw DomainError("jacobi_theta3: t must be nonzero");
    return theta3_sum<cplx>(t, u, tol);
}

double theta3_product(double t, double u, Tolerance tol) {
    if (!(t > 0.0)) throw DomainError("theta3_product: t must be positive");
    if (!(u >= 0.0 && u < 1.0)) throw NonConvergent("theta3_product: u must lie in [0,1)");
    const double su = std::sqrt(u);
    return q_pochhammer_inf(u, u, tol).value * q_pochhammer_inf(-su * t, u, tol).value *
           q_pochhammer_inf(-su / t, u, tol).value;
}

double theta_mult(double x, double u, Tolerance tol) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("theta_mult: u must lie in (0,1)");
    if (x == 0.0) throw DomainError("theta_mult: x must be nonzero");
    if (is_power_of(x, u)) return 0.0;
    return q_pochhammer_inf(x, u, tol).value * q_pochhammer_inf(u / x, u, tol).value;
}

cplx theta_mult(cplx x, double u, Tolerance tol) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("theta_mult: u must lie in (0,1)");
    if (x == cplx(0.0)) throw DomainError("theta_mult: x must be nonzero");
    if (x.imag() == 0.0 && is_power_of(x.real(), u)) return 0.0;
    return q_pochhammer_inf(x, u, tol).value * q_pochhammer_inf(u / x, u, tol).value;
}

// ---------------------------------------------------------------- Bessel J

double bessel_j_series(double alpha, double x) {
    if (alpha < 0.0 || x < 0.0) throw DomainError("bessel_j: need alpha >= 0 and x >= 0");
    if (x == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
    const long double h = 0.5L * x;
    const long double h2 = h * h;
    long double term = std::exp(alpha * std::log(h) - std::lgamma(alpha + 1.0L));
    long double sum = term;
    long double big = std::fabs(term);
    for (int m = 1; m < 500; ++m) {
        term *= -h2 / (m * (alpha + m));
        sum += term;
        big = std::max(big, std::fabs(term));
        if (m > h && std::fabs(term) < 1e-21L * big) break;
    }
    return static_cast<double>(sum);
}

double bessel_j_asymptotic(double alpha, double x) {
    if (alpha < 0.0 || x <= 0.0) throw DomainError("bessel_j_asymptotic: need alpha >= 0 and x > 0");
    const double mu = 4.0 * alpha * alpha;
    double p = 0.0, q = 0.0;
    double ak = 1.0;  // a_k(alpha) / x^k
    double prev = 2.0;
    bool done = false;
    for (int k = 0; k < 200; ++k) {
        const double mag = std::abs(ak);
        if (k > 0 && mag > prev) break;
        const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p += sgn * ak;
        else
            q += sgn * ak;
        if (mag < 1e-17 || ak == 0.0) {
            done = true;
            break;
        }
        prev = mag;
        const double o = 2.0 * k + 1.0;
        ak *= (mu - o * o) / ((k + 1) * 8.0 * x);
    }
    // the smallest term bounds the error
    if (!done && prev > 1e-11) throw NonConvergent("bessel_j_asymptotic: expansion does not reach precision");
    const double w = x - 0.5 * alpha * pi - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

double bessel_j_integral(double alpha, double x) {
    if (alpha < 0.0 || x < 0.0) throw DomainError("bessel_j: need alpha >= 0 and x >= 0");
    const GaussRule& g = gauss_legendre_rule(20);
    const int panels = std::max(4, int(std::ceil((alpha + x) / 3.0)));
    double first = 0.0;
    for (int k = 0; k < panels; ++k) {
        first += integrate_panel([&](double th) { return std::cos(alpha * th - x * std::sin(th)); },
                                 pi * k / panels, pi * (k + 1) / panels, g);
    }
    first /= pi;
    const double s = std::sin(alpha * pi);
    if (s == 0.0) return first;
    // second term: boundaries where the exponent x sinh t + alpha t steps by 2
    auto expo = [&](double t) { return x * std::sinh(t) + alpha * t; };
    double second = 0.0, lo = 0.0;
    for (int k = 1; k <= 24; ++k) {
        double a = lo, b = lo + 1.0;
        while (expo(b) < 2.0 * k) b += 1.0;
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (a + b);
            (expo(m) < 2.0 * k ? a : b) = m;
        }
        second += integrate_panel([&](double t) { return std::exp(-expo(t)); }, lo, b, g);
        lo = b;
    }
    return first - s / pi * second;
}

double bessel_j(double alpha, double x) {
    if (alpha < 0.0 || x < 0.0) throw DomainError("bessel_j: need alpha >= 0 and x >= 0");
    if (x <= 15.0) return bessel_j_series(alpha, x);
    if (x < 20.0) return bessel_j_integral(alpha, x);
    try {
        return bessel_j_asymptotic(alpha, x);
    } catch (const NonConvergent&) {
        return bessel_j_integral(alpha, x);
    }
}

double bessel_j_prime(double alpha, double x) {
    if (alpha < 0.0 || x < 0.0) throw DomainError("bessel_j_prime: need alpha >= 0 and x >= 0");
    if (x == 0.0) {
        if (alpha == 0.0 || alpha > 1.0) return 0.0;
        if (alpha == 1.0) return 0.5;
        return std::numeric_limits<double>::infinity();
    }
    if (x <= 15.0) {
        const long double h = 0.5L * x;
        const long double h2 = h * h;
        long double term = std::exp(alpha * std::log(h) - std::lgamma(alpha + 1.0L));
        long double sum = term * alpha;
        long double big = std::fabs(sum) + std::fabs(term);
        for (int m = 1; m < 500; ++m) {
            term *= -h2 / (m * (alpha + m));
            const long double d = term * (alpha + 2 * m);
            sum += d;
            big = std::max(big, std::fabs(d));
            if (m > h && std::fabs(d) < 1e-21L * big) break;
        }
        return static_cast<double>(sum / x);
    }
    return alpha / x * bessel_j(alpha, x) - bessel_j(alpha + 1.0, x);
}

double bessel_j_mellin_barnes(double alpha, double x) {
    if (alpha < 0.0 || x <= 0.0) throw DomainError("bessel_j_mellin_barnes: need alpha >= 0 and x > 0");
    const double sigma = -0.5;
    const double lh = std::log(0.5 * x);
    const GaussRule& g = gauss_legendre_rule(20);
    auto integrand = [&](double tau) {
        const double sg = tau < 0.0 ? -1.0 : 1.0;
        const cplx z(sigma + std::abs(tau), tau);
        const cplx dz(sg, 1.0);
        const cplx v = std::exp(log_gamma(-z) - log_gamma(alpha + 1.0 + z) + (alpha + 2.0 * z) * lh);
        return v * dz;
    };
    cplx acc = 0.0;
    const double T = 40.0, h = 0.5;
    for (double a = -T; a < T - 1e-12; a += h) acc += integrate_panel(integrand, a, a + h, g);
    return (acc / cplx(0.0, 2.0 * pi)).real();
}

// ----------------------------------------------------- modified Bessel I, K

namespace {

// Panel boundaries along t in [0, T] for integrands exp(-z cosh t + nu t).
template <class F>
cplx cosh_laplace(cplx z, double nu, F&& weight) {
    const double rz = z.real();
    const double az = std::abs(z);
    const double tstar = std::asinh(std::max(0.0, nu / rz) );
    auto logmag = [&](double t) { return -rz * std::cosh(t) + nu * t; };
    const double gmax = logmag(tstar);
    const GaussRule& g = gauss_legendre_rule(16);
    cplx acc = 0.0;
    double t = 0.0;
    for (int guard = 0; guard < 200000; ++guard) {
        const double scale = std::max({1.0, std::sqrt(az), az * std::sinh(t + 0.25)});
        const double h = std::min(0.5, 1.5 / scale);
        acc += integrate_panel([&](double s) { return std::exp(-z * std::cosh(s)) * weight(s); }, t, t + h, g);
        t += h;
        if (t > tstar && logmag(t) < gmax - 46.0) return acc;
    }
    throw QuadratureFailure("modified Bessel integral: panel budget exceeded");
}

}  // namespace

cplx bessel_k(double nu, cplx z) {
    if (nu < 0.0) throw DomainError("bessel_k: nu must be >= 0");
    if (!(z.real() > 0.0)) throw DomainError("bessel_k: need Re z > 0");
    return cosh_laplace(z, nu, [&](double t) { return std::cosh(nu * t); });
}

cplx bessel_i(double nu, cplx z) {
    if (nu < 0.0) throw DomainError("bessel_i: nu must be >= 0");
    if (!(z.real() > 0.0)) throw DomainError("bessel_i: need Re z > 0");
    if (std::abs(z) <= 2.0) {
        const cplx h = 0.5 * z;
        const cplx h2 = h * h;
        cplx term = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
        cplx sum = term;
        for (int k = 1; k < 200; ++k) {
            term *= h2 / (double(k) * (nu + k));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    const GaussRule& g = gauss_legendre_rule(20);
    const int panels = std::max(4, int(std::ceil((std::abs(z) + nu) / 3.0)));
    cplx first = 0.0;
    for (int k = 0; k < panels; ++k)
        first += integrate_panel([&](double th) { return std::exp(z * std::cos(th)) * std::cos(nu * th); },
                                 pi * k / panels, pi * (k + 1) / panels, g);
    first /= pi;
    const double s = std::sin(nu * pi);
    if (s == 0.0) return first;
    // exp(-nu t) keeps the weight bounded; reuse the Laplace panels with nu -> 0
    const cplx second = cosh_laplace(z, 0.0, [&](double t) { return std::exp(-nu * t); });
    return first - s / pi * second;
}

// ------------------------------------------------------------------- Airy

namespace {

constexpr long double ai0 = 0.355028053887817239260063186004183176L;
constexpr long double aip0 = -0.258819403792806798405183560189203963L;

void airy_series(long double x, long double& ai, long double& aip) {
    // Ai = ai0 f - |aip0| g
    const long double x3 = x * x * x;
    long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
    long double tf = 1.0L, tg = x, uf = 0.5L * x * x, ug = 1.0L;
    fp = uf;
    for (int k = 0; k < 200; ++k) {
        tf *= x3 / ((3 * k + 2) * (3 * k + 3));
        tg *= x3 / ((3 * k + 3) * (3 * k + 4));
        ug *= x3 / ((3 * k + 1) * (3 * k + 3));
        f += tf;
        g += tg;
        gp += ug;
        if (k > 0) {
            uf *= x3 / ((3 * k) * (3 * k + 2));
            fp += uf;
        }
        const long double m = std::fabs(tf) + std::fabs(tg) + std::fabs(uf) + std::fabs(ug);
        if (k > 2 && m < 1e-24L) break;
    }
    ai = ai0 * f + aip0 * g;
    aip = ai0 * fp + aip0 * gp;
}

// u_k and v_k of the Airy asymptotic expansions.
struct AiryCoefficients {
    std::array<double, 60> u{}, v{};
    AiryCoefficients() {
        long double uk = 1.0L;
        u[0] = v[0] = 1.0;
        for (int k = 1; k < 60; ++k) {
            // u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!)
            // ratio u_k/u_{k-1} = (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k)
            uk *= (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k);
            u[k] = static_cast<double>(uk);
            v[k] = static_cast<double>(-(6.0L * k + 1) / (6.0L * k - 1) * uk);
        }
    }
};

const AiryCoefficients& airy_coeffs() {
    static const AiryCoefficients c;
    return c;
}

// sum_k (-1)^k c_k / z^k truncated at the smallest term; optionally split by parity
double alternating(const std::array<double, 60>& c, double zeta, int parity, int stride) {
    double acc = 0.0, prev = 1e300;
    for (int k = parity, j = 0; k < 60; k += stride, ++j) {
        const double t = c[k] / std::pow(zeta, k);
        if (std::abs(t) > prev) break;
        acc += ((stride == 1 ? k : j) % 2 == 0 ? 1.0 : -1.0) * t;
        prev = std::abs(t);
        if (prev < 1e-18) break;
    }
    return acc;
}

}  // namespace

double airy_ai_series(double x) {
    long double a, ap;
    airy_series(x, a, ap);
    return static_cast<double>(a);
}

double airy_ai_prime_series(double x) {
    long double a, ap;
    airy_series(x, a, ap);
    return static_cast<double>(ap);
}

double airy_ai_asymptotic(double x) {
    const auto& c = airy_coeffs();
    if (x > 0.0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        return std::exp(-zeta) / (2.0 * std::sqrt(pi) * std::pow(x, 0.25)) * alternating(c.u, zeta, 0, 1);
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double ph = zeta - 0.25 * pi;
    return (std::cos(ph) * alternating(c.u, zeta, 0, 2) + std::sin(ph) * alternating(c.u, zeta, 1, 2)) /
           (std::sqrt(pi) * std::pow(z, 0.25));
}

double airy_ai_prime_asymptotic(double x) {
    const auto& c = airy_coeffs();
    if (x > 0.0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        return -std::pow(x, 0.25) * std::exp(-zeta) / (2.0 * std::sqrt(pi)) * alternating(c.v, zeta, 0, 1);
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double ph = zeta - 0.25 * pi;
    return std::pow(z, 0.25) / std::sqrt(pi) *
           (std::sin(ph) * alternating(c.v, zeta, 0, 2) - std::cos(ph) * alternating(c.v, zeta, 1, 2));
}

double airy_ai(double x) {
    if (x > 105.0) return 0.0;
    return std::abs(x) <= 8.0 ? airy_ai_series(x) : airy_ai_asymptotic(x);
}

double airy_ai_prime(double x) {
    if (x > 105.0) return 0.0;
    return std::abs(x) <= 8.0 ? airy_ai_prime_series(x) : airy_ai_prime_asymptotic(x);
}

// ------------------------------------------------------------- dilogarithm

double dilog(double x) {
    if (x > 1.0) throw DomainError("dilog: x must be <= 1");
    constexpr double z2 = pi * pi / 6.0;
    if (x == 1.0) return z2;
    if (x < -1.0) {
        const double l = std::log(-x);
        return -z2 - 0.5 * l * l - dilog(1.0 / x);
    }
    if (x < -0.5) {
        const double l = std::log1p(-x);
        return -dilog(x / (x - 1.0)) - 0.5 * l * l;
    }
    if (x > 0.5) return z2 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
    double acc = 0.0, p = x;
    for (int k = 1; k < 200; ++k) {
        const double t = p / (double(k) * k);
        acc += t;
        if (std::abs(t) < 1e-18) break;
        p *= x;
    }
    return acc;
}

// --------------------------------------------------------------- log Gamma

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("log_gamma: pole at nonpositive integer");
    cplx shift = 0.0;
    if (z.real() < 10.0) {
        const int n = int(std::ceil(10.0 - z.real()));
        for (int j = 0; j < n; ++j) shift += std::log(z + double(j));
        z += double(n);
    }
    static constexpr std::array<double, 8> b = {1.0 / 6,  -1.0 / 30, 1.0 / 42,      -1.0 / 30,
                                                5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
    const cplx iz = 1.0 / z, iz2 = iz * iz;
    cplx series = 0.0, p = iz;
    for (int k = 1; k <= 8; ++k) {
        series += b[k - 1] / (2.0 * k * (2.0 * k - 1)) * p;
        p *= iz2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
}

}  // namespace cylpeak
