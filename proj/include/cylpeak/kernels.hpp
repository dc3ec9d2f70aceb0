#pragma once

#include <Eigen/Dense>

#include "cylpeak/model.hpp"
#include "cylpeak/special_functions.hpp"

namespace cylpeak {

enum class BesselMethod { Auto, Quadrature, PoleExpansion };

// Finite-temperature Bessel kernel in exponential coordinates,
//   e^{-(x+y)/2} int_0^inf J_a(2 sqrt(u e^-x)) J_a(2 sqrt(u e^-y)) du / (1 + u^N).
// Quadrature substitutes u = r^2 and needs the r^{-2N} envelope to beat the
// tail tolerance inside max_panels; that works from N = 3 on. The pole
// expansion closes the r-integral over the N poles of the Fermi factor in the
// right half plane and is exact for every N. Auto picks the expansion for N <= 2.
Estimate<double> ft_bessel_kernel(double x, double y, double alpha, int n_temp, const QuadratureSpec& quad = {},
                                  BesselMethod method = BesselMethod::Auto);
double ft_bessel_pole_expansion(double x, double y, double alpha, int n_temp);

// Hard-edge limit N -> infinity, e^{-(x+y)/2} B_a(e^-x, e^-y).
double hard_edge_bessel_exp(double x, double y, double alpha);

// int sigma(beta v) Ai(x+v) Ai(y+v) dv with sigma the logistic function.
Estimate<double> ft_airy_kernel(double x, double y, double beta, const QuadratureSpec& quad = {});
// All entries K(xs_i, xs_j) at once, as Phi diag(w sigma) Phi^T on a shared v grid.
Eigen::MatrixXd ft_airy_kernel_matrix(const Eigen::VectorXd& xs, double beta, const QuadratureSpec& quad = {});

double airy_kernel_zero_temp(double x, double y);

// The Bessel kernel again, from the double contour integral over
// Re zeta = eta and Re omega = -eta of
//   g(zeta) e^{-x zeta} e^{y omega} / g(omega) * pi / (N sin(pi (zeta - omega) / N)),
// g(zeta) = Gamma(c - zeta) / Gamma(c + zeta), c = (alpha+1)/2.
// The zeta integral is closed to the right by residues; the remaining omega
// integrals run along the line (sine terms) or along a bent path (rational terms).
// Accuracy degrades for strongly negative x through cancellation in the
// exp(-x k) series.
Estimate<double> bessel_limit_contour_kernel(double x, double y, double alpha, int n_temp, double eta = 0.25);

}  // namespace cylpeak
