#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssflab/ode.hpp"
#include "ssflab/quadrature.hpp"

using namespace ssflab;

TEST_CASE("adaptive rule on polynomials and kinks") {
    auto q = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(q.value == doctest::Approx(1.0 / 3).epsilon(1e-14));

    q = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0);
    CHECK(q.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-9));
}

TEST_CASE("adaptive rule on an oscillatory integrand") {
    auto q = integrate_adaptive([](double x) { return std::sin(40.0 * x); }, 0.0, M_PI);
    CHECK(q.value == doctest::Approx((1.0 - std::cos(40.0 * M_PI)) / 40.0).epsilon(1e-10));
}

TEST_CASE("semi-infinite integral") {
    auto q = integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-12));
    q = integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 2.0);
    CHECK(q.value == doctest::Approx(M_PI / 2 - std::atan(2.0)).epsilon(1e-12));
}

TEST_CASE("Gauss-Legendre exactness to degree 2n-1") {
    std::vector<double> x, w;
    gauss_legendre(6, x, w);
    // integrate x^10 over [-1,1]: exact 2/11 with n = 6
    double s = 0;
    for (int i = 0; i < 6; ++i) s += w[i] * std::pow(x[i], 10);
    CHECK(s == doctest::Approx(2.0 / 11).epsilon(1e-13));
    double total = 0;
    for (double wi : w) total += wi;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("panel split respects interior breakpoints") {
    std::vector<double> x, w;
    gauss_legendre_panels(64, 0.0, 2.0, {0.5}, x, w);
    // every node stays off the breakpoint and inside the interval,
    // weights integrate constants exactly
    double total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i] > 0.0);
        CHECK(x[i] < 2.0);
        CHECK(x[i] != 0.5);
        total += w[i];
    }
    CHECK(total == doctest::Approx(2.0).epsilon(1e-13));

    // a kink at the breakpoint is integrated to near machine accuracy
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += w[i] * std::abs(x[i] - 0.5);
    CHECK(s == doctest::Approx(0.5 * (0.25 + 2.25)).epsilon(1e-12));
}

TEST_CASE("trapezoid on a nonuniform grid") {
    std::vector<double> xs{0.0, 0.5, 2.0};
    std::vector<double> ys{0.0, 1.0, 4.0};
    CHECK(trapezoid(xs, ys) == doctest::Approx(0.25 + 0.75 * 5.0));
}

TEST_CASE("ODE integrator reproduces the harmonic oscillator") {
    auto rhs = [](double, const std::array<double, 2>& y) {
        return std::array<double, 2>{y[1], -y[0]};
    };
    auto y = integrate_ode<double, 2>(rhs, 0.0, 10.0, {1.0, 0.0});
    CHECK(y[0] == doctest::Approx(std::cos(10.0)).epsilon(1e-9));
    CHECK(y[1] == doctest::Approx(-std::sin(10.0)).epsilon(1e-9));
}

TEST_CASE("ODE integrator runs backward") {
    auto rhs = [](double, const std::array<double, 1>& y) {
        return std::array<double, 1>{y[0]};
    };
    auto y = integrate_ode<double, 1>(rhs, 2.0, 0.0, {std::exp(2.0)});
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("complex state integration") {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    auto rhs = [i](double, const std::array<C, 1>& y) {
        return std::array<C, 1>{i * y[0]};
    };
    auto y = integrate_ode<C, 1>(rhs, 0.0, M_PI, {C(1.0, 0.0)});
    CHECK(std::abs(y[0] - std::exp(i * M_PI)) < 1e-10);
}
