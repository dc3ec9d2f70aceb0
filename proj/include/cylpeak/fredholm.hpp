#pragma once

#include <functional>

#include <Eigen/Dense>

#include "cylpeak/discrete_kernel.hpp"
#include "cylpeak/model.hpp"
#include "cylpeak/quadrature.hpp"
#include "cylpeak/special_functions.hpp"

namespace cylpeak {

struct NystromSpec {
    int m_nodes = 64;
    double map_scale = 10.0;
    double rel_tol = 1e-8;
    int max_nodes = 512;
};

struct DiscreteTailSpec {
    double trace_tol = 1e-12;
    long max_dim = 2000;
};

using KernelFn = std::function<double(double, double)>;
// Builds the full kernel matrix on a node vector at once.
using KernelMatrixFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
// Kernel on half-integer positions.
using DiscreteKernelFn = std::function<double(double, double)>;

double matrix_determinant(const Eigen::MatrixXd& a);

// det(I - K) on L^2(s, inf) by Nystrom on the map s + L u / (1 - u), doubling
// the node count from spec.m_nodes until two successive values agree to rel_tol.
// Throws NonConvergent if that has not happened by spec.max_nodes.
Estimate<double> fredholm_det_semiinfinite(const KernelFn& kernel, double s, const NystromSpec& spec = {});
Estimate<double> fredholm_det_semiinfinite_matrix(const KernelMatrixFn& kernel, double s,
                                                  const NystromSpec& spec = {});

// Smallest M such that the diagonal beyond position ell + M - 1/2 sums below trace_tol.
// diag(i) is K(ell + i + 1/2, ell + i + 1/2).
long discrete_tail_dimension(const std::function<double(long)>& diag, const DiscreteTailSpec& spec);

// det(I - K) on l^2{ell + 1/2, ell + 3/2, ...}; throws TailNotDecaying when
// the diagonal has not decayed below trace_tol within max_dim positions.
Estimate<double> fredholm_det_discrete(const DiscreteKernelFn& kernel, long ell, const DiscreteTailSpec& spec = {});
// Same, from the cylindric kernel of params via its coefficient table.
Estimate<double> fredholm_det_discrete(long ell, const ModelParams& params, const DiscreteTailSpec& spec = {});

// det(I - K) on {ell + 1/2, ...} for many ell at once. One kernel block is
// assembled from min(ells) and each determinant uses a trailing principal block.
std::vector<double> fredholm_det_discrete_many(const std::vector<long>& ells, const ModelParams& params,
                                               const DiscreteTailSpec& spec = {});

// Nystrom kernels for the finite-temperature limits.
KernelMatrixFn bessel_kernel_matrix_fn(double alpha, int n_temp);
KernelMatrixFn airy_kernel_matrix_fn(double beta, const QuadratureSpec& quad = {});

}  // namespace cylpeak
