#include <cmath>

#include "cylpeak/scaling.hpp"
#include "doctest.h"

using namespace cylpeak;
using doctest::Approx;

TEST_SUITE("scaling") {

TEST_CASE("action at the critical point") {
    for (double b : {0.2, 0.5, 0.7}) CHECK(std::abs(action_S(1.0, b)) < 1e-15);
    const ActionDerivatives d = action_derivatives(0.5);
    CHECK(std::abs(d.d1.value) < 1e-10);
    CHECK(std::abs(d.d2.value) < 1e-8);
    CHECK(d.d3.value == Approx(4.0).epsilon(1e-7));
    CHECK_THROWS_AS(action_S(0.4, 0.5), DomainError);
    CHECK_THROWS_AS(action_S(2.5, 0.5), DomainError);
}

TEST_CASE("series and dilogarithm forms of the action agree") {
    // 0.9 and 1.1 sit on either side of the switch for b = 0.85
    for (double b : {0.3, 0.85})
        for (double z : {0.9, 0.97, 1.02, 1.1}) {
            const double direct = dilog(b * z) - dilog(b / z) + 2.0 * std::log1p(-b) * std::log(z);
            CHECK(std::abs(action_S(z, b) - direct) < 1e-13);
        }
}

TEST_CASE("critical point report") {
    const CriticalPointReport r = critical_point_report(0.25);
    CHECK(r.constants.b == 0.5);
    CHECK(r.constants.c1 == Approx(1.38629436112).epsilon(1e-11));
    CHECK(r.constants.c2_paper == Approx(1.0).epsilon(1e-14));
    CHECK(r.constants.c2_action == Approx(std::cbrt(2.0)).epsilon(1e-8));
    CHECK(r.ratio == Approx(std::cbrt(2.0)).epsilon(1e-8));
    for (double a : {0.09, 0.49}) {
        const CriticalPointReport s = critical_point_report(a);
        const double b = std::sqrt(a);
        CHECK(s.constants.c2_action == Approx(std::cbrt(b) * std::pow(1 - b, -2.0 / 3.0)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(critical_point_report(1.0), DomainError);
}

TEST_CASE("part (i) scaling map") {
    const ScaledPoint p = scaling_part_i(0.1, 0.0, 1.0, 1);
    CHECK(p.ell == 46);
    CHECK(p.params.q == Approx(0.904837418).epsilon(1e-9));
    CHECK(p.params.a == Approx(0.904837418).epsilon(1e-9));
    long prev = -1;
    for (double s = -2; s <= 4; s += 0.5) {
        const long l = scaling_part_i(0.05, s, 1.0, 1).ell;
        CHECK(l >= prev);
        prev = l;
    }
    CHECK_THROWS_AS(scaling_part_i(0.1, -50.0, 1.0, 1), ScaleError);
    CHECK_THROWS_AS(scaling_part_i(1.5, 0.0, 1.0, 1), ScaleError);
}

TEST_CASE("part (ii) scaling map") {
    CHECK(scaling_part_ii(0.05, 0.0, 0.25, 1.0, C2Mode::Action).params.n == 7);
    CHECK(scaling_part_ii(0.02, 0.0, 0.25, 1.0, C2Mode::Action).params.n == 14);
    const ScaledPoint a = scaling_part_ii(0.02, 1.0, 0.25, 1.0, C2Mode::Action);
    const ScaledPoint p = scaling_part_ii(0.02, 1.0, 0.25, 1.0, C2Mode::Paper);
    const double c1 = 2 * std::log(2.0);
    CHECK(a.ell == long(std::floor(c1 / 0.02 + std::cbrt(2.0) * std::pow(0.02, -1.0 / 3.0))));
    CHECK(p.ell == long(std::floor(c1 / 0.02 + std::pow(0.02, -1.0 / 3.0))));
    CHECK(a.beta_eff == Approx(std::cbrt(2.0)).epsilon(1e-8));
    CHECK(p.beta_eff == Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(scaling_part_ii(0.5, 0.0, 0.25, 0.1, C2Mode::Action), ScaleError);
    CHECK(parse_c2_mode("paper") == C2Mode::Paper);
    CHECK_THROWS_AS(parse_c2_mode("other"), DomainError);
}

TEST_CASE("convergence table right tail") {
    ConvergeConfig cfg;
    cfg.eps = {0.2};
    cfg.s_grid = {8.0};
    const ConvergeTable t = run_converge_bessel(cfg);
    REQUIRE(t.rows.size() == 1);
    CHECK(std::abs(t.rows[0].discrete_det - 1.0) < 1e-3);
    CHECK(std::abs(t.rows[0].limit_det - 1.0) < 1e-3);
    REQUIRE(t.summary.size() == 1);
    CHECK(t.summary[0].sup_diff == t.rows[0].abs_diff);
    CHECK(t.summary[0].shift_bias > 0.0);
}

TEST_CASE("airy tables carry both conventions") {
    ConvergeConfig cfg;
    cfg.eps = {0.1};
    cfg.s_grid = {6.0};
    cfg.a = 0.25;
    cfg.beta = 1.0;
    const AiryConvergeResult r = run_converge_airy(cfg);
    CHECK(r.primary.label == "airy-action");
    CHECK(r.other.label == "airy-paper");
    CHECK(r.primary.rows.size() == 1);
    CHECK(r.other.rows.size() == 1);
    CHECK(std::abs(r.primary.rows[0].limit_det - 1.0) < 1e-2);
}

TEST_CASE("config validation") {
    ConvergeConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.eps = {0.1};
    cfg.s_grid = {1.0, 0.0};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.s_grid = {0.0, 1.0};
    CHECK_NOTHROW(cfg.validate());
}

}
