#include "cylpeak/discrete_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace cylpeak {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int next_pow2(double m) {
    int p = 64;
    while (p < m) p *= 2;
    return p;
}

Tolerance fine_tol() {
    Tolerance t;
    t.abs_tol = 1e-17;
    return t;
}

}  // namespace

void ContourSpec::validate(const ModelParams& p) const {
    const double ratio = rz / rw;
    const double aq = p.a * p.q;
    if (!(rw > 0.0 && ratio > 1.0 && ratio < 1.0 / p.u()))
        throw ContourError("ContourSpec: need 1 < rz/rw < q^-N");
    if (!(rz < 1.0 / std::sqrt(aq))) throw ContourError("ContourSpec: need rz < (aq)^{-1/2}");
    if (!(rw > std::sqrt(aq))) throw ContourError("ContourSpec: need rw > (aq)^{1/2}");
    if (m_points < 64) throw ContourError("ContourSpec: m_points must be >= 64");
}

ContourSpec make_contour(const ModelParams& params, int k_scale) {
    params.validate();
    const double u = params.u();
    const double aq = params.a * params.q;
    ContourSpec c;
    const double half = std::pow(u, -0.25);  // sqrt of rz/rw = u^{-1/2}
    c.rz = std::min(half, std::pow(aq, -0.25));
    c.rw = std::max(1.0 / half, std::pow(aq, 0.25));
    const double A = std::sqrt(aq);
    const double rho = c.rz / c.rw;
    // slowest geometric decay among the aliased Laurent tails
    const double lam = std::min({-std::log(A * c.rz), -std::log(A / c.rw), -std::log(rho * u), std::log(rho)});
    const double need = std::max({256.0, 4.0 * k_scale, 2.0 * (k_scale + 40.0 / lam)});
    c.m_points = next_pow2(need);
    c.validate(params);
    return c;
}

cplx discrete_symbol_f(cplx z, const ModelParams& p, Tolerance tol) {
    const double A = std::sqrt(p.a * p.q);
    return std::exp(log_q_pochhammer_inf(cplx(A) / z, p.q, tol).value - log_q_pochhammer_inf(A * z, p.q, tol).value);
}

cplx discrete_symbol_kappa(cplx r, const ModelParams& p, Tolerance tol) {
    const double u = p.u();
    const double t = p.t_shift;
    const double lpu = log_q_pochhammer_inf(u, u, tol).value;
    const cplx lth = log_q_pochhammer_inf(1.0 / r, u, tol).value + log_q_pochhammer_inf(u * r, u, tol).value;
    const cplx num = jacobi_theta3(t * r, u, tol);
    const double den = jacobi_theta3(t, u, tol);
    return std::exp(2.0 * lpu - lth) * num / den;
}

// ---------------------------------------------------------------- direct

namespace {

struct KahanC {
    cplx s = 0.0, c = 0.0;
    void add(cplx x) {
        const cplx y = x - c;
        const cplx t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

cplx direct_sum(long p, long pp, const ModelParams& params, const ContourSpec& cs) {
    const int M = cs.m_points;
    const Tolerance tol = fine_tol();
    const double rho = cs.rz / cs.rw;
    std::vector<cplx> fz(M), gw(M), kap(M);
    for (int a = 0; a < M; ++a) {
        const double th = two_pi * a / M;
        const cplx e = std::polar(1.0, th);
        // z^{-p-1} dz / (2 pi i) -> z^{-p} / M ; w^{p'-1} dw / (2 pi i) -> w^{p'} / M
        fz[a] = discrete_symbol_f(cs.rz * e, params, tol) * std::polar(std::pow(cs.rz, -double(p)), -th * double(p));
        gw[a] = std::polar(std::pow(cs.rw, double(pp)), th * double(pp)) / discrete_symbol_f(cs.rw * e, params, tol);
        kap[a] = discrete_symbol_kappa(rho * e, params, tol);
    }
    KahanC outer;
    for (int a = 0; a < M; ++a) {
        KahanC inner;
        for (int b = 0; b < M; ++b) inner.add(kap[(a - b + M) % M] * gw[b]);
        outer.add(fz[a] * inner.s);
    }
    return outer.s / (double(M) * double(M));
}

long position(double k) {
    const double p = k + 0.5;
    const double pr = std::round(p);
    if (std::abs(p - pr) > 1e-9) throw DomainError("discrete kernel: positions must be half-integers");
    return long(pr);
}

void check_real(cplx v) {
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
        throw PrecisionError("discrete kernel: imaginary part above 1e-10");
}

}  // namespace

Estimate<double> discrete_cylindric_kernel(double k, double kp, const ModelParams& params, const ContourSpec& contour,
                                          double rel_tol) {
    params.validate();
    contour.validate(params);
    const long p = position(k), pp = position(kp);
    const cplx v1 = direct_sum(p, pp, params, contour);
    ContourSpec c2 = contour;
    c2.m_points *= 2;
    const cplx v2 = direct_sum(p, pp, params, c2);
    check_real(v2);
    const double diff = std::abs(v2.real() - v1.real());
    if (diff > rel_tol * std::max(1.0, std::abs(v2.real())))
        throw PrecisionError("discrete kernel: node doubling changed the value beyond rel_tol");
    return {v2.real(), diff};
}

// ----------------------------------------------------------------- table

DiscreteKernelTable::DiscreteKernelTable(const ModelParams& params, const ContourSpec& contour)
    : params_(params), contour_(contour) {
    params_.validate();
    contour_.validate(params_);
    const int M = contour_.m_points;
    const Tolerance tol = fine_tol();
    const double rho = contour_.rz / contour_.rw;
    std::vector<cplx> fv(M), gv(M), kv(M);
    for (int a = 0; a < M; ++a) {
        const cplx e = std::polar(1.0, two_pi * a / M);
        fv[a] = discrete_symbol_f(contour_.rz * e, params_, tol);
        gv[a] = 1.0 / discrete_symbol_f(contour_.rw * e, params_, tol);
        kv[a] = discrete_symbol_kappa(rho * e, params_, tol);
    }
    Eigen::FFT<double> fft;
    fft.fwd(f_, fv);
    fft.fwd(g_, gv);
    fft.fwd(kap_, kv);
    for (int m = 0; m < M; ++m) {
        f_[m] /= double(M);
        g_[m] /= double(M);
        kap_[m] /= double(M);
    }
    std::vector<cplx> gh;
    fft.fwd(gh, g_);
    g_hat_rev_.resize(M);
    for (int j = 0; j < M; ++j) g_hat_rev_[j] = gh[(M - j) % M];
}

double DiscreteKernelTable::entry(long p, long pp) const {
    const long M = contour_.m_points;
    auto idx = [M](long i) { return std::size_t(((i % M) + M) % M); };
    KahanC acc;
    for (long n = 0; n < M; ++n) acc.add(f_[idx(p - n)] * kap_[n] * g_[idx(n - pp)]);
    const cplx v = acc.s * std::pow(contour_.rz, -double(p)) * std::pow(contour_.rw, double(pp));
    check_real(v);
    return v.real();
}

double DiscreteKernelTable::operator()(double k, double kp) const { return entry(position(k), position(kp)); }

Eigen::MatrixXd DiscreteKernelTable::block(long lo, long dim) const {
    const long M = contour_.m_points;
    if (lo + dim + 1 > M / 2) throw PrecisionError("DiscreteKernelTable: positions beyond half the node count");
    auto idx = [M](long i) { return std::size_t(((i % M) + M) % M); };
    Eigen::MatrixXd out(dim, dim);
    Eigen::FFT<double> fft;
    std::vector<cplx> arow(M), ahat, prod(M), r;
    for (long i = 0; i < dim; ++i) {
        const long p = lo + 1 + i;
        for (long n = 0; n < M; ++n) arow[n] = f_[idx(p - n)] * kap_[n];
        fft.fwd(ahat, arow);
        for (long j = 0; j < M; ++j) prod[j] = ahat[j] * g_hat_rev_[j];
        fft.inv(r, prod);
        const double sp = std::pow(contour_.rz, -double(p));
        for (long j = 0; j < dim; ++j) {
            const long pp = lo + 1 + j;
            const cplx v = r[idx(pp)] * sp * std::pow(contour_.rw, double(pp));
            check_real(v);
            out(i, j) = v.real();
        }
    }
    return out;
}

Eigen::VectorXd DiscreteKernelTable::diagonal(long lo, long dim) const {
    Eigen::VectorXd d(dim);
    for (long i = 0; i < dim; ++i) d[i] = entry(lo + 1 + i, lo + 1 + i);
    return d;
}

}  // namespace cylpeak
