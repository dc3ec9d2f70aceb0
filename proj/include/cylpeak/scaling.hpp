#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cylpeak/fredholm.hpp"
#include "cylpeak/model.hpp"
#include "cylpeak/special_functions.hpp"

namespace cylpeak {

enum class C2Mode { Paper, Action };

C2Mode parse_c2_mode(const std::string& s);
std::string to_string(C2Mode m);

struct ScalingConstants {
    double b = 0.0;
    double c1 = 0.0;
    double c2_paper = 0.0;   // 2^{-1/3} a^{1/6} (1-b)^{-2/3}
    double c2_action = 0.0;  // (S'''(1) / 2)^{1/3} from finite differences

    double c2(C2Mode m) const { return m == C2Mode::Paper ? c2_paper : c2_action; }
};

// S(z) = Li2(b z) - Li2(b / z) - c1 log z with c1 = -2 log(1 - b).
double action_S(double z, double b);

struct ActionDerivatives {
    Estimate<double> d1, d2, d3;  // S', S'', S''' at z = 1
};

// Central differences with step h and h/2, combined by Richardson extrapolation.
ActionDerivatives action_derivatives(double b, double h = 1e-3);

struct CriticalPointReport {
    ScalingConstants constants;
    ActionDerivatives derivs;
    double s3_closed = 0.0;  // 2b / (1-b)^2
    double ratio = 0.0;      // c2_action / c2_paper
};

CriticalPointReport critical_point_report(double a);

struct ScaledPoint {
    ModelParams params;
    long ell = 0;
    double beta_eff = 0.0;
};

// q = e^-eps, a = e^{-alpha eps}, ell = floor(2 eps^-1 log eps^-1 + s eps^-1).
ScaledPoint scaling_part_i(double eps, double s, double alpha, int n);
// q = e^-eps, N = round(beta eps^{-2/3}), ell = floor(c1 / eps + s c2 eps^{-1/3}).
ScaledPoint scaling_part_ii(double eps, double s, double a, double beta, C2Mode mode);

struct ConvergeRow {
    double epsilon = 0.0, s = 0.0, discrete_det = 0.0, limit_det = 0.0, abs_diff = 0.0;
};

struct ConvergeSummary {
    double epsilon = 0.0;
    double sup_diff = 0.0;
    double shift_bias = 0.0;  // eps E|c|, the systematic error from the shift
};

struct ConvergeTable {
    std::string label;
    std::vector<ConvergeRow> rows;
    std::vector<ConvergeSummary> summary;
};

// The N = 1 Bessel kernel is only Lipschitz across the diagonal and needs up to 2048 nodes.
inline NystromSpec wide_nystrom() {
    NystromSpec s;
    s.max_nodes = 2048;
    return s;
}

struct ConvergeConfig {
    std::vector<double> eps;
    std::vector<double> s_grid;
    double alpha = 1.0;  // part i
    int n = 1;           // part i
    double a = 0.25;     // part ii
    double beta = 1.0;   // part ii
    C2Mode c2_mode = C2Mode::Action;
    NystromSpec nystrom = wide_nystrom();
    DiscreteTailSpec tail;
    QuadratureSpec quad;

    void validate() const;
};

ConvergeTable run_converge_bessel(const ConvergeConfig& cfg);

struct AiryConvergeResult {
    ConvergeTable primary;  // cfg.c2_mode
    ConvergeTable other;    // the other c2 convention, for comparison
    C2Mode better = C2Mode::Action;  // smaller sup difference at the smallest eps
};

AiryConvergeResult run_converge_airy(const ConvergeConfig& cfg);

// Peak CDF three ways at ell = 0..ell_max: Monte Carlo L + chi, enumeration, and the
// discrete determinant, which carries the independent shift c. abs_diff is |empirical - exact|.
struct CdfCompareRow {
    long ell = 0;
    double empirical = 0.0, exact = 0.0, fredholm = 0.0, abs_diff = 0.0;
};

struct CdfCompareResult {
    std::vector<CdfCompareRow> rows;
    double ks = 0.0;           // over the full support
    double exact_tail = 0.0;   // mass the enumeration missed
};

CdfCompareResult run_cdf_compare(const ModelParams& params, long count, std::uint64_t seed, int max_volume,
                                 long ell_max, const DiscreteTailSpec& tail = {});

}  // namespace cylpeak
