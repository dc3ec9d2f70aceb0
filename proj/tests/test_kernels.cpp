#include <cmath>
#include <random>

#include "cylpeak/discrete_kernel.hpp"
#include "cylpeak/kernels.hpp"
#include "doctest.h"

using namespace cylpeak;
using doctest::Approx;

TEST_SUITE("kernels") {

// Frozen by 40-digit quadrature of the u-integral.
TEST_CASE("finite-temperature Bessel kernel oracles") {
    struct Row {
        double x, y, alpha;
        int n;
        double ref;
    };
    const Row rows[] = {{0, 0, 0, 1, 0.51926159669194149973},   {2, 3, 1, 1, 0.036680992439714397908},
                        {2, 3, 1, 2, 0.012091442140458129458},  {0.5, 1.5, 0, 1, 0.18047072321953913191},
                        {2, 3, 1, 3, 0.0062955648812873},      {1, 0, 2, 3, 0.032409728844407},
                        {0, 0, 0, 5, 0.374223385018969}};
    for (const Row& r : rows) {
        CAPTURE(r.n);
        CHECK(std::abs(ft_bessel_kernel(r.x, r.y, r.alpha, r.n).value - r.ref) < 1e-9);
    }
}

TEST_CASE("Bessel kernel methods agree where both apply") {
    for (int n : {3, 4, 6})
        for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 2.5}, {-1.0, 0.5}}) {
            const double quad = ft_bessel_kernel(x, y, 1.0, n, {}, BesselMethod::Quadrature).value;
            CHECK(std::abs(quad - ft_bessel_pole_expansion(x, y, 1.0, n)) < 1e-9);
        }
}

TEST_CASE("Bessel kernel symmetry and positivity") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> d(-2.0, 4.0);
    for (int k = 0; k < 20; ++k) {
        const double x = d(gen), y = d(gen);
        const int n = 1 + k % 5;
        CHECK(std::abs(ft_bessel_kernel(x, y, 0.5, n).value - ft_bessel_kernel(y, x, 0.5, n).value) < 1e-10);
        CHECK(ft_bessel_kernel(x, x, 0.5, n).value > 0.0);
    }
}

TEST_CASE("Bessel temperature limit is monotone") {
    for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {-0.5, 0.5}}) {
        const double lim = hard_edge_bessel_exp(x, y, 1.0);
        double prev = 1e300;
        for (int n : {5, 20, 200}) {
            const double d = std::abs(ft_bessel_kernel(x, y, 1.0, n).value - lim);
            CHECK(d < prev);
            prev = d;
        }
    }
}

TEST_CASE("hard-edge Bessel kernel") {
    CHECK(hard_edge_bessel_exp(0, 0, 0) == Approx(0.382738584866672134).epsilon(1e-10));
    CHECK(hard_edge_bessel_exp(0.3, 2.0, 1.5) == Approx(hard_edge_bessel_exp(2.0, 0.3, 1.5)).epsilon(1e-13));
    CHECK(std::abs(hard_edge_bessel_exp(0, 20, 0)) < 1e-4);
    // the diagonal limit joins the off-diagonal formula continuously
    for (double alpha : {0.0, 1.0, 2.5})
        for (double x : {-3.0, 0.0, 2.0})
            CHECK(std::abs(hard_edge_bessel_exp(x, x, alpha) - hard_edge_bessel_exp(x, x + 1e-6, alpha)) < 1e-6);
}

TEST_CASE("zero-temperature Airy kernel") {
    const double aip0 = airy_ai_prime(0);
    CHECK(airy_kernel_zero_temp(0, 0) == Approx(aip0 * aip0).epsilon(1e-13));
    CHECK(airy_kernel_zero_temp(0, 0) == Approx(0.0669874837796640).epsilon(1e-12));
    CHECK(airy_kernel_zero_temp(-1.2, 0.7) == Approx(airy_kernel_zero_temp(0.7, -1.2)).epsilon(1e-14));
    CHECK(std::abs(airy_kernel_zero_temp(1.0, 1.0) - airy_kernel_zero_temp(1.0, 1.0 + 1e-7)) < 1e-7);
}

TEST_CASE("finite-temperature Airy kernel") {
    const double closed01 = (airy_ai(0) * airy_ai_prime(1) - airy_ai_prime(0) * airy_ai(1)) / (0.0 - 1.0);
    CHECK(std::abs(ft_airy_kernel(0, 0, 40).value - 0.0669874837796640) < 2.5e-4);
    CHECK(std::abs(ft_airy_kernel(0, 1, 40).value - closed01) < 1e-4);
    CHECK(std::abs(ft_airy_kernel(0.4, -1.1, 3).value - ft_airy_kernel(-1.1, 0.4, 3).value) < 1e-12);
    CHECK(ft_airy_kernel(0.5, 0.5, 2).value > 0.0);
    for (auto [x, y] : {std::pair{0.0, 0.0}, {0.0, 1.0}, {-1.0, 0.5}}) {
        const double lim = airy_kernel_zero_temp(x, y);
        double prev = 1e300;
        for (double beta : {5.0, 20.0, 50.0}) {
            const double d = std::abs(ft_airy_kernel(x, y, beta).value - lim);
            CHECK(d < prev);
            prev = d;
        }
    }
}

TEST_CASE("Airy kernel matrix matches pointwise evaluation") {
    Eigen::VectorXd xs(4);
    xs << -2.0, -0.3, 0.8, 4.0;
    const Eigen::MatrixXd k = ft_airy_kernel_matrix(xs, 2.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(k(i, j) - ft_airy_kernel(xs[i], xs[j], 2.0).value) < 1e-9);
}

TEST_CASE("contour form of the Bessel kernel") {
    for (auto [x, y, alpha, n] :
         {std::tuple{2.0, 3.0, 1.0, 2}, {0.0, 0.0, 0.0, 1}, {1.0, 0.0, 2.0, 3}, {0.5, 1.5, 0.0, 1}}) {
        const double ref = ft_bessel_kernel(x, y, alpha, n).value;
        CHECK(std::abs(bessel_limit_contour_kernel(x, y, alpha, n).value - ref) < 1e-6);
    }
    CHECK(std::abs(bessel_limit_contour_kernel(2, 3, 1, 2).value - bessel_limit_contour_kernel(3, 2, 1, 2).value) < 1e-8);
    CHECK_THROWS_AS(bessel_limit_contour_kernel(0, 0, 0, 0), DomainError);
}

TEST_CASE("make_contour satisfies its window") {
    ModelParams p;
    p.q = 0.5;
    p.a = 0.5;
    p.n = 1;
    ContourSpec c{1.25, 0.8, 256};
    CHECK_NOTHROW(c.validate(p));
    CHECK_NOTHROW(make_contour(p, 0).validate(p));
    p.q = 0.9;
    p.a = 0.9;
    p.n = 2;
    CHECK_NOTHROW(make_contour(p, 0).validate(p));
    CHECK(make_contour(p, 400).m_points >= 1600);
    ContourSpec bad{0.9, 1.1, 256};
    CHECK_THROWS_AS(bad.validate(p), ContourError);
}

TEST_CASE("discrete kernel is real and contour independent") {
    ModelParams p;
    p.q = 0.4;
    p.a = 0.5;
    p.n = 2;
    const ContourSpec c1 = make_contour(p, 16);
    ContourSpec c2 = c1;
    c2.rz = 1.0 + 0.6 * (c1.rz - 1.0);
    c2.rw = 1.0 - 0.6 * (1.0 - c1.rw);
    c2.validate(p);
    for (double k : {0.5, 1.5, 4.5})
        for (double kp : {0.5, 2.5, -1.5}) {
            const double v1 = discrete_cylindric_kernel(k, kp, p, c1).value;
            const double v2 = discrete_cylindric_kernel(k, kp, p, c2).value;
            CHECK(std::abs(v1 - v2) < 1e-9);
        }
}

TEST_CASE("FFT coefficient table matches the direct double sum") {
    ModelParams p;
    p.q = 0.3;
    p.a = 0.5;
    p.n = 1;
    const ContourSpec c = make_contour(p, 40);
    const DiscreteKernelTable t(p, c);
    for (double k : {0.5, 3.5, 9.5})
        for (double kp : {0.5, 1.5, 7.5}) CHECK(std::abs(t(k, kp) - discrete_cylindric_kernel(k, kp, p, c).value) < 1e-11);
    const Eigen::MatrixXd b = t.block(2, 5);
    CHECK(b(1, 3) == Approx(t(3.5, 5.5)).epsilon(1e-14));
    const Eigen::VectorXd d = t.diagonal(2, 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(d[i] == Approx(b(i, i)).epsilon(1e-14));
        CHECK(d[i] > 0.0);
    }
}

}
