#pragma once

#include <cmath>
#include <string>

#include "cylpeak/errors.hpp"

namespace cylpeak {

// (a, q, N) of the trace-seam-volume measure, plus the shift fugacity t.
struct ModelParams {
    double a = 0.5;
    double q = 0.5;
    int n = 1;
    double t_shift = 1.0;

    double u() const { return std::pow(q, n); }

    void validate() const {
        if (!(q > 0.0 && q < 1.0)) throw DomainError("ModelParams: q must lie in (0,1)");
        if (!(a > 0.0 && a <= 1.0)) throw DomainError("ModelParams: a must lie in (0,1]");
        if (!(a * q < 1.0)) throw DomainError("ModelParams: a*q must be < 1");
        if (n < 1) throw DomainError("ModelParams: n must be >= 1");
        if (!(t_shift > 0.0)) throw DomainError("ModelParams: t_shift must be positive");
    }
};

struct QuadratureSpec {
    double rel_tol = 1e-9;
    int max_panels = 20000;
    double tail_tol = 1e-12;
};

}  // namespace cylpeak
