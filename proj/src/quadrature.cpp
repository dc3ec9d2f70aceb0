#include "cylpeak/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "cylpeak/errors.hpp"

namespace cylpeak {

namespace {

GaussRule compute_rule(int m) {
    GaussRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    // Newton on P_m with the Tricomi initial guess; symmetric halves.
    for (int i = 0; i < (m + 1) / 2; ++i) {
        long double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        long double p0 = 1.0L, p1 = x;
        for (int k = 2; k <= m; ++k) {
            const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0L);
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        // map [-1,1] -> (0,1)
        r.nodes[m - 1 - i] = static_cast<double>(0.5L * (1.0L + x));
        r.nodes[i] = static_cast<double>(0.5L * (1.0L - x));
        r.weights[i] = r.weights[m - 1 - i] = static_cast<double>(0.5L * w);
    }
    return r;
}

}  // namespace

const GaussRule& gauss_legendre_rule(int m) {
    if (m < 1) throw DomainError("gauss_legendre_rule: m must be >= 1");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, std::make_unique<GaussRule>(compute_rule(m))).first;
    return *it->second;
}

}  // namespace cylpeak
