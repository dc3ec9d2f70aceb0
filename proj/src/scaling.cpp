#include "cylpeak/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cylpeak/combinatorics.hpp"
#include "cylpeak/errors.hpp"
#include "cylpeak/monte_carlo.hpp"

namespace cylpeak {

C2Mode parse_c2_mode(const std::string& s) {
    if (s == "paper") return C2Mode::Paper;
    if (s == "action") return C2Mode::Action;
    throw DomainError("c2_mode must be 'paper' or 'action', got '" + s + "'");
}

std::string to_string(C2Mode m) { return m == C2Mode::Paper ? "paper" : "action"; }

double action_S(double z, double b) {
    if (!(b > 0.0 && b < 1.0)) throw DomainError("action_S: b must lie in (0,1)");
    if (!(z > b && b * z < 1.0)) throw DomainError("action_S: need b < z < 1/b");
    const double c1 = -2.0 * std::log1p(-b);
    const double t = std::log(z);
    if (b * std::exp(std::abs(t)) > 0.95) return dilog(b * z) - dilog(b / z) - c1 * t;
    // near z = 1 the two dilogarithms cancel to O(t); summing
    // Li2(b e^t) - Li2(b e^-t) = sum 2 b^k sinh(k t) / k^2 termwise keeps the
    // relative accuracy that the finite differences need
    long double acc = 0.0L, bk = 1.0L;
    for (int k = 1; k < 5000; ++k) {
        bk *= b;
        const long double term = 2.0L * bk * std::sinh((long double)k * t) / ((long double)k * k);
        acc += term;
        if (std::abs(term) <= 1e-22L * std::abs(acc)) break;
    }
    return double(acc - (long double)c1 * t);
}

namespace {

// Central stencils for the first three derivatives at z0 with step h.
struct Stencil {
    double d1, d2, d3;
};

Stencil central(double b, double h) {
    const double f0 = action_S(1.0, b);
    const double p1 = action_S(1.0 + h, b), m1 = action_S(1.0 - h, b);
    const double p2 = action_S(1.0 + 2 * h, b), m2 = action_S(1.0 - 2 * h, b);
    return {(p1 - m1) / (2 * h), (p1 - 2 * f0 + m1) / (h * h), (p2 - 2 * p1 + 2 * m1 - m2) / (2 * h * h * h)};
}

Estimate<double> richardson(double coarse, double fine) {
    // both stencils are second order
    const double r = fine + (fine - coarse) / 3.0;
    return {r, std::abs(fine - coarse) / 3.0};
}

}  // namespace

ActionDerivatives action_derivatives(double b, double h) {
    if (!(h > 0.0) || !(1.0 - 2 * h > b) || !(b * (1.0 + 2 * h) < 1.0))
        throw DomainError("action_derivatives: step leaves the dilogarithm domain");
    const Stencil c = central(b, h), f = central(b, 0.5 * h);
    return {richardson(c.d1, f.d1), richardson(c.d2, f.d2), richardson(c.d3, f.d3)};
}

CriticalPointReport critical_point_report(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("critical_point_report: a must lie in (0,1)");
    CriticalPointReport r;
    ScalingConstants& k = r.constants;
    k.b = std::sqrt(a);
    k.c1 = -2.0 * std::log1p(-k.b);
    k.c2_paper = std::cbrt(0.5) * std::pow(a, 1.0 / 6.0) * std::pow(1.0 - k.b, -2.0 / 3.0);
    r.derivs = action_derivatives(k.b);
    k.c2_action = std::cbrt(0.5 * r.derivs.d3.value);
    r.s3_closed = 2.0 * k.b / ((1.0 - k.b) * (1.0 - k.b));
    r.ratio = k.c2_action / k.c2_paper;
    return r;
}

ScaledPoint scaling_part_i(double eps, double s, double alpha, int n) {
    if (!(eps > 0.0 && eps < 1.0)) throw ScaleError("scaling_part_i: eps must lie in (0,1)");
    if (!(alpha > 0.0)) throw ScaleError("scaling_part_i: alpha must be positive");
    if (n < 1) throw ScaleError("scaling_part_i: n must be >= 1");
    if (!std::isfinite(s)) throw ScaleError("scaling_part_i: s must be finite");
    ScaledPoint p;
    p.params.q = std::exp(-eps);
    p.params.a = std::exp(-alpha * eps);
    p.params.n = n;
    const double l = 2.0 / eps * std::log(1.0 / eps) + s / eps;
    if (l < 0.0) throw ScaleError("scaling_part_i: ell < 0");
    p.ell = long(std::floor(l));
    p.beta_eff = 0.0;
    return p;
}

ScaledPoint scaling_part_ii(double eps, double s, double a, double beta, C2Mode mode) {
    if (!(eps > 0.0 && eps < 1.0)) throw ScaleError("scaling_part_ii: eps must lie in (0,1)");
    if (!(a > 0.0 && a < 1.0)) throw ScaleError("scaling_part_ii: a must lie in (0,1)");
    if (!(beta > 0.0)) throw ScaleError("scaling_part_ii: beta must be positive");
    if (!std::isfinite(s)) throw ScaleError("scaling_part_ii: s must be finite");
    const long n = std::lround(beta * std::pow(eps, -2.0 / 3.0));
    if (n < 1) throw ScaleError("scaling_part_ii: N = round(beta eps^{-2/3}) < 1");
    const CriticalPointReport cp = critical_point_report(a);
    const double c2 = cp.constants.c2(mode);
    ScaledPoint p;
    p.params.q = std::exp(-eps);
    p.params.a = a;
    p.params.n = int(n);
    const double l = cp.constants.c1 / eps + s * c2 * std::pow(eps, -1.0 / 3.0);
    if (l < 0.0) throw ScaleError("scaling_part_ii: ell < 0");
    p.ell = long(std::floor(l));
    p.beta_eff = beta * c2;
    return p;
}

void ConvergeConfig::validate() const {
    if (eps.empty()) throw DomainError("converge: eps list is empty");
    for (double e : eps)
        if (!(e > 0.0 && e < 1.0)) throw DomainError("converge: eps values must lie in (0,1)");
    if (s_grid.empty()) throw DomainError("converge: s grid is empty");
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (!std::isfinite(s_grid[i])) throw DomainError("converge: s grid must be finite");
        if (i > 0 && s_grid[i] < s_grid[i - 1]) throw DomainError("converge: s grid must be sorted");
    }
}

namespace {

double mean_abs_shift(const ModelParams& p) {
    const Pmf c = shift_pmf(p);
    double m = 0.0;
    for (const auto& [v, pr] : c.support) m += std::abs(double(v)) * pr;
    return m;
}

// Discrete determinants at all ell for one parameter point.
std::vector<double> discrete_column(const std::vector<ScaledPoint>& pts, const DiscreteTailSpec& tail) {
    std::vector<long> ells;
    for (const auto& p : pts) ells.push_back(p.ell);
    return fredholm_det_discrete_many(ells, pts.front().params, tail);
}

void summarise(ConvergeTable& t, double eps, const ModelParams& p, std::size_t first_row) {
    ConvergeSummary s;
    s.epsilon = eps;
    for (std::size_t i = first_row; i < t.rows.size(); ++i) s.sup_diff = std::max(s.sup_diff, t.rows[i].abs_diff);
    s.shift_bias = eps * mean_abs_shift(p);
    t.summary.push_back(s);
}

}  // namespace

ConvergeTable run_converge_bessel(const ConvergeConfig& cfg) {
    cfg.validate();
    ConvergeTable t;
    t.label = "bessel";
    const KernelMatrixFn kernel = bessel_kernel_matrix_fn(cfg.alpha, cfg.n);
    std::vector<double> limit;
    for (double s : cfg.s_grid) limit.push_back(fredholm_det_semiinfinite_matrix(kernel, s, cfg.nystrom).value);
    for (double eps : cfg.eps) {
        std::vector<ScaledPoint> pts;
        for (double s : cfg.s_grid) pts.push_back(scaling_part_i(eps, s, cfg.alpha, cfg.n));
        const std::vector<double> disc = discrete_column(pts, cfg.tail);
        const std::size_t first = t.rows.size();
        for (std::size_t i = 0; i < pts.size(); ++i)
            t.rows.push_back({eps, cfg.s_grid[i], disc[i], limit[i], std::abs(disc[i] - limit[i])});
        summarise(t, eps, pts.front().params, first);
    }
    return t;
}

namespace {

ConvergeTable airy_table(const ConvergeConfig& cfg, C2Mode mode, std::map<std::pair<double, double>, double>& cache) {
    ConvergeTable t;
    t.label = "airy-" + to_string(mode);
    for (double eps : cfg.eps) {
        std::vector<ScaledPoint> pts;
        for (double s : cfg.s_grid) pts.push_back(scaling_part_ii(eps, s, cfg.a, cfg.beta, mode));
        const std::vector<double> disc = discrete_column(pts, cfg.tail);
        const std::size_t first = t.rows.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double s = cfg.s_grid[i];
            const auto key = std::make_pair(pts[i].beta_eff, s);
            auto it = cache.find(key);
            if (it == cache.end()) {
                const double v =
                    fredholm_det_semiinfinite_matrix(airy_kernel_matrix_fn(pts[i].beta_eff, cfg.quad), s, cfg.nystrom)
                        .value;
                it = cache.emplace(key, v).first;
            }
            t.rows.push_back({eps, s, disc[i], it->second, std::abs(disc[i] - it->second)});
        }
        summarise(t, eps, pts.front().params, first);
    }
    return t;
}

}  // namespace

AiryConvergeResult run_converge_airy(const ConvergeConfig& cfg) {
    cfg.validate();
    std::map<std::pair<double, double>, double> cache;
    AiryConvergeResult r;
    const C2Mode other = cfg.c2_mode == C2Mode::Action ? C2Mode::Paper : C2Mode::Action;
    r.primary = airy_table(cfg, cfg.c2_mode, cache);
    r.other = airy_table(cfg, other, cache);
    // the smallest eps decides
    auto at_min_eps = [](const ConvergeTable& t) {
        const auto it = std::min_element(t.summary.begin(), t.summary.end(),
                                         [](const ConvergeSummary& x, const ConvergeSummary& y) { return x.epsilon < y.epsilon; });
        return it->sup_diff;
    };
    r.better = at_min_eps(r.primary) <= at_min_eps(r.other) ? cfg.c2_mode : other;
    return r;
}

CdfCompareResult run_cdf_compare(const ModelParams& params, long count, std::uint64_t seed, int max_volume,
                                 long ell_max, const DiscreteTailSpec& tail) {
    if (ell_max < 0) throw DomainError("cdf-compare: ell_max must be >= 0");
    const Pmf exact = exact_peak_pmf(params, max_volume);
    std::vector<long> peaks;
    for (const auto& s : sample_peaks(params, count, seed)) peaks.push_back(s.peak());
    const Ecdf e = ecdf(std::move(peaks));
    std::vector<long> ells;
    for (long l = 0; l <= ell_max; ++l) ells.push_back(l);
    const std::vector<double> det = fredholm_det_discrete_many(ells, params, tail);
    CdfCompareResult r;
    for (long l = 0; l <= ell_max; ++l) {
        const double emp = e(l), ex = exact.cdf(l);
        r.rows.push_back({l, emp, ex, det[std::size_t(l)], std::abs(emp - ex)});
    }
    r.ks = ks_distance(e, [&](long x) { return exact.cdf(x); });
    r.exact_tail = exact.tail_bound;
    return r;
}

}  // namespace cylpeak
