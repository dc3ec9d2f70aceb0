#include "cylpeak/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "cylpeak/kernels.hpp"
#include "cylpeak/parallel.hpp"

namespace cylpeak {

double matrix_determinant(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw DomainError("matrix_determinant: matrix must be square");
    if (a.rows() == 0) return 1.0;
    return a.partialPivLu().determinant();
}

namespace {

struct NystromNodes {
    Eigen::VectorXd x, sw;  // mapped nodes and sqrt(phi' w)
};

NystromNodes nystrom_nodes(double s, int m, double L) {
    const GaussRule& g = gauss_legendre_rule(m);
    NystromNodes out;
    out.x.resize(m);
    out.sw.resize(m);
    for (int i = 0; i < m; ++i) {
        const double u = g.nodes[i];
        out.x[i] = s + L * u / (1.0 - u);
        out.sw[i] = std::sqrt(L / ((1.0 - u) * (1.0 - u)) * g.weights[i]);
    }
    return out;
}

double nystrom_det(const KernelMatrixFn& kernel, double s, int m, double L) {
    const NystromNodes nd = nystrom_nodes(s, m, L);
    Eigen::MatrixXd a = kernel(nd.x);
    a = nd.sw.asDiagonal() * a * nd.sw.asDiagonal();
    return matrix_determinant(Eigen::MatrixXd::Identity(m, m) - a);
}

}  // namespace

Estimate<double> fredholm_det_semiinfinite_matrix(const KernelMatrixFn& kernel, double s, const NystromSpec& spec) {
    if (spec.m_nodes < 8) throw DomainError("NystromSpec: m_nodes must be >= 8");
    int m = spec.m_nodes;
    double prev = nystrom_det(kernel, s, m, spec.map_scale);
    double prev_diff = 0.0, prev_acc = prev;
    bool have_acc = false;
    while (2 * m <= spec.max_nodes) {
        m *= 2;
        const double cur = nystrom_det(kernel, s, m, spec.map_scale);
        const double diff = cur - prev;
        if (std::abs(diff) < spec.rel_tol) return {cur, std::abs(diff)};
        // Kernels with a kink on the diagonal converge algebraically, so the differences
        // shrink geometrically under doubling; Aitken's step removes that leading term.
        const double r = prev_diff != 0.0 ? diff / prev_diff : 0.0;
        if (r > 0.0 && r < 0.5) {
            const double acc = cur + diff * r / (1.0 - r);
            if (have_acc && std::abs(acc - prev_acc) < spec.rel_tol) return {acc, std::abs(acc - prev_acc)};
            prev_acc = acc;
            have_acc = true;
        } else {
            have_acc = false;
        }
        prev = cur;
        prev_diff = diff;
    }
    throw NonConvergent("fredholm_det_semiinfinite: node doubling did not settle within max_nodes");
}

Estimate<double> fredholm_det_semiinfinite(const KernelFn& kernel, double s, const NystromSpec& spec) {
    KernelMatrixFn fill = [&kernel](const Eigen::VectorXd& x) {
        const Eigen::Index m = x.size();
        Eigen::MatrixXd k(m, m);
        parallel_for(std::size_t(m), [&](std::size_t i) {
            for (Eigen::Index j = Eigen::Index(i); j < m; ++j) k(Eigen::Index(i), j) = kernel(x[Eigen::Index(i)], x[j]);
        });
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < i; ++j) k(i, j) = k(j, i);
        return k;
    };
    return fredholm_det_semiinfinite_matrix(fill, s, spec);
}

long discrete_tail_dimension(const std::function<double(long)>& diag, const DiscreteTailSpec& spec) {
    std::vector<double> d;
    // extend until the diagonal is far below tolerance and shrinking geometrically
    for (long i = 0;; ++i) {
        if (i > spec.max_dim + 64) throw TailNotDecaying("fredholm_det_discrete: diagonal tail does not decay");
        d.push_back(std::abs(diag(i)));
        if (i >= 8 && d[i] < 1e-2 * spec.trace_tol && d[i] <= d[i - 1] && d[i - 1] <= d[i - 2]) break;
    }
    const long J = long(d.size()) - 1;
    const double r = d[J - 1] > 0.0 ? std::min(d[J] / d[J - 1], 0.99) : 0.0;
    double tail = d[J] * r / (1.0 - r);
    long M = J + 1;
    while (M > 0 && tail + d[M - 1] < spec.trace_tol) {
        tail += d[M - 1];
        --M;
    }
    if (M > spec.max_dim) throw TailNotDecaying("fredholm_det_discrete: dimension exceeds max_dim");
    return M;
}

Estimate<double> fredholm_det_discrete(const DiscreteKernelFn& kernel, long ell, const DiscreteTailSpec& spec) {
    const double base = double(ell) + 0.5;
    const long M = discrete_tail_dimension([&](long i) { return kernel(base + i, base + i); }, spec);
    Eigen::MatrixXd k(M, M);
    parallel_for(std::size_t(M), [&](std::size_t i) {
        for (long j = 0; j < M; ++j) k(long(i), j) = kernel(base + double(i), base + double(j));
    });
    return {matrix_determinant(Eigen::MatrixXd::Identity(M, M) - k), spec.trace_tol};
}

namespace {

// A coefficient table wide enough for positions up to lo + dim, with dim from the tail rule.
struct SizedTable {
    std::unique_ptr<DiscreteKernelTable> table;
    long dim = 0;
};

SizedTable sized_table(long lo, long hi, const ModelParams& params, const DiscreteTailSpec& spec) {
    long guess = 256;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const ContourSpec cs = make_contour(params, int(hi + guess + 1));
        auto table = std::make_unique<DiscreteKernelTable>(params, cs);
        const long tail = discrete_tail_dimension([&](long i) { return (*table)(hi + i + 0.5, hi + i + 0.5); }, spec);
        if (tail <= guess) return {std::move(table), hi - lo + tail};
        guess = 2 * tail;
    }
    throw TailNotDecaying("fredholm_det_discrete: could not size the kernel table");
}

}  // namespace

Estimate<double> fredholm_det_discrete(long ell, const ModelParams& params, const DiscreteTailSpec& spec) {
    const std::vector<double> v = fredholm_det_discrete_many({ell}, params, spec);
    return {v[0], spec.trace_tol};
}

std::vector<double> fredholm_det_discrete_many(const std::vector<long>& ells, const ModelParams& params,
                                               const DiscreteTailSpec& spec) {
    if (ells.empty()) return {};
    const long lo = *std::min_element(ells.begin(), ells.end());
    const long hi = *std::max_element(ells.begin(), ells.end());
    const SizedTable st = sized_table(lo, hi, params, spec);
    const Eigen::MatrixXd k = st.table->block(lo, st.dim);
    std::vector<double> out(ells.size());
    parallel_for(ells.size(), [&](std::size_t i) {
        const long off = ells[i] - lo;
        const long d = st.dim - off;
        out[i] = matrix_determinant(Eigen::MatrixXd::Identity(d, d) - k.bottomRightCorner(d, d));
    });
    return out;
}

KernelMatrixFn bessel_kernel_matrix_fn(double alpha, int n_temp) {
    return [alpha, n_temp](const Eigen::VectorXd& x) {
        const Eigen::Index m = x.size();
        const int N = n_temp;
        Eigen::MatrixXcd iv = Eigen::MatrixXcd::Zero(m, N), kv = Eigen::MatrixXcd::Zero(m, N);
        Eigen::VectorXcd c2(N);
        std::vector<cplx> c(N);
        for (int k = 0; k < N; ++k) {
            c[k] = std::polar(1.0, 0.5 * (std::numbers::pi * (2 * k + 1) / N - std::numbers::pi));
            c2[k] = c[k] * c[k];
        }
        // beyond x = 120 the kernel is below e^{-120}
        std::vector<char> live(m);
        for (Eigen::Index i = 0; i < m; ++i) live[i] = x[i] < 120.0;
        parallel_for(std::size_t(m), [&](std::size_t ii) {
            const Eigen::Index i = Eigen::Index(ii);
            if (!live[i]) return;
            const double a = 2.0 * std::exp(-0.5 * x[i]);
            for (int k = 0; k < N; ++k) {
                iv(i, k) = bessel_i(alpha, a * c[k]);
                kv(i, k) = bessel_k(alpha, a * c[k]);
            }
        });
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            if (!live[i]) continue;
            for (Eigen::Index j = i; j < m; ++j) {
                if (!live[j]) continue;
                // the larger coordinate has the smaller Bessel argument and goes into I
                const Eigen::Index small = x[i] <= x[j] ? i : j, large = x[i] <= x[j] ? j : i;
                cplx acc = 0.0;
                for (int k = 0; k < N; ++k) acc += c2[k] * iv(large, k) * kv(small, k);
                out(i, j) = out(j, i) = std::exp(-0.5 * (x[i] + x[j])) * 2.0 * acc.real() / N;
            }
        }
        return out;
    };
}

KernelMatrixFn airy_kernel_matrix_fn(double beta, const QuadratureSpec& quad) {
    return [beta, quad](const Eigen::VectorXd& x) { return ft_airy_kernel_matrix(x, beta, quad); };
}

}  // namespace cylpeak
