#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cylpeak/model.hpp"
#include "cylpeak/special_functions.hpp"

namespace cylpeak {

struct ContourSpec {
    double rz = 1.1;
    double rw = 0.9;
    int m_points = 256;

    // Throws ContourError unless 1 < rz/rw < q^-N, rz < (aq)^{-1/2}, rw > (aq)^{1/2}.
    void validate(const ModelParams& p) const;
};

// Radii at the geometric midpoints of the admissible windows, rz rw = 1
// where possible, and a power-of-two node count large enough to resolve
// Fourier modes up to k_scale.
ContourSpec make_contour(const ModelParams& params, int k_scale);

// Symbol pieces of the discrete kernel.
cplx discrete_symbol_f(cplx z, const ModelParams& p, Tolerance tol = {});
cplx discrete_symbol_kappa(cplx r, const ModelParams& p, Tolerance tol = {});

// K(k,k') for half-integers k, k' by the double trapezoid rule on both
// circles; the node count is doubled once to check precision.
// Throws PrecisionError if the doubling moves the value by more than rel_tol.
Estimate<double> discrete_cylindric_kernel(double k, double kp, const ModelParams& params, const ContourSpec& contour,
                                          double rel_tol = 1e-9);

// The same kernel from one set of trapezoid evaluations: Laurent coefficients
// of F, 1/F and kappa are read off by FFT and recombined.
class DiscreteKernelTable {
public:
    DiscreteKernelTable(const ModelParams& params, const ContourSpec& contour);

    // K(k,k') at half-integers.
    double operator()(double k, double kp) const;
    // K on positions {lo + 1/2, ..., lo + dim - 1/2}.
    Eigen::MatrixXd block(long lo, long dim) const;
    // K(k,k) on the same positions.
    Eigen::VectorXd diagonal(long lo, long dim) const;

    const ContourSpec& contour() const { return contour_; }

private:
    double entry(long p, long pp) const;

    ModelParams params_;
    ContourSpec contour_;
    std::vector<cplx> f_, g_, kap_;  // scaled coefficients, index mod M
    std::vector<cplx> g_hat_rev_;    // DFT of g_ at -j
};

}  // namespace cylpeak
