#pragma once

#include <Eigen/Dense>

namespace cylpeak {

struct GaussRule {
    Eigen::VectorXd nodes;    // in (0,1), increasing
    Eigen::VectorXd weights;  // sum to 1
};

// Gauss-Legendre rule mapped to (0,1). Rules are computed once per order and
// cached; the returned reference stays valid for the life of the program.
const GaussRule& gauss_legendre_rule(int m);

// Apply rule r to f on [a,b].
template <class F>
auto integrate_panel(F&& f, double a, double b, const GaussRule& r) {
    const double h = b - a;
    using R = decltype(f(a));
    R acc = R(0.0);
    for (Eigen::Index i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(a + h * r.nodes[i]);
    return acc * h;
}

}  // namespace cylpeak
