#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssflab/potential.hpp"

using namespace ssflab;

TEST_CASE("square well evaluates piecewise") {
    Potential v = Potential::square_well(-1.0, 1.0);
    CHECK(v.evaluate(0.5) == -1.0);
    CHECK(v.evaluate(1.5) == 0.0);
    CHECK_THROWS_AS(v.evaluate(-0.1), DomainError);
    CHECK(v.l1_norm() == doctest::Approx(1.0));
    CHECK(v.l1_tail(1.0) == 0.0);
    CHECK(!v.is_zero());
}

TEST_CASE("exponential tail integral is exact") {
    Potential v = Potential::exponential(-2.0, 1.0);
    CHECK(v.evaluate(0.0) == doctest::Approx(-2.0));
    CHECK(v.l1_tail(3.0) == doctest::Approx(2.0 * std::exp(-3.0)));
    CHECK(v.l1_norm() == doctest::Approx(2.0));
}

TEST_CASE("gaussian bump") {
    Potential v = Potential::gaussian_bump(2.0, 0.5, 1.0);
    CHECK(v.evaluate(1.0) == doctest::Approx(2.0));
    CHECK(v.evaluate(1.5) == doctest::Approx(2.0 * std::exp(-1.0)));
    // mass over (0, inf): h * w * sqrt(pi)/2 * erfc(-center/width)
    CHECK(v.l1_norm() ==
          doctest::Approx(2.0 * 0.5 * 0.5 * std::sqrt(M_PI) * std::erfc(-2.0))
              .epsilon(1e-9));
}

TEST_CASE("truncation restricts the support") {
    Potential v = Potential::square_well(-1.0, 2.0).truncated(0.5);
    CHECK(v.evaluate(0.25) == -1.0);
    CHECK(v.evaluate(0.75) == 0.0);
    CHECK(v.l1_norm() == doctest::Approx(0.5));
}

TEST_CASE("sign parts reassemble the potential") {
    std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
    std::vector<double> vs{1.0, -2.0, 0.5, -0.25};
    Potential v = Potential::grid_sampled(xs, vs);
    Potential p = v.positive_part(), m = v.negative_part();
    for (double x = 0.0; x <= 3.0; x += 0.17) {
        CHECK(p.evaluate(x) >= 0.0);
        CHECK(m.evaluate(x) >= 0.0);
        CHECK(p.evaluate(x) - m.evaluate(x) == doctest::Approx(v.evaluate(x)));
    }
}

TEST_CASE("shifted potential translates") {
    Potential v = Potential::square_well(-1.0, 2.0);
    Potential s = v.shifted(1.5);
    CHECK(s.evaluate(0.25) == -1.0); // original x = 1.75 inside the well
    CHECK(s.evaluate(0.75) == 0.0);  // original x = 2.25 outside
}

TEST_CASE("grid interpolation modes") {
    std::vector<double> xs{0.0, 1.0, 2.0};
    std::vector<double> vs{0.0, 2.0, 0.0};
    Potential lin = Potential::grid_sampled(xs, vs, GridInterpolation::Linear);
    Potential pc = Potential::grid_sampled(xs, vs, GridInterpolation::PiecewiseConstant);
    CHECK(lin.evaluate(0.5) == doctest::Approx(1.0));
    CHECK(pc.evaluate(0.5) == doctest::Approx(0.0));  // left sample holds
    CHECK(lin.evaluate(2.5) == 0.0);
    CHECK(lin.l1_norm() == doctest::Approx(2.0)); // triangle area
}

TEST_CASE("factorization: u*v = V with v = |V|^{1/2}") {
    Potential v = Potential::square_well(-4.0, 2.0);
    Factorization f = factorize(v);
    CHECK(f.v(1.0) == doctest::Approx(2.0));
    CHECK(f.u(1.0) == doctest::Approx(-2.0));
    CHECK(f.u(1.0) * f.v(1.0) == doctest::Approx(v.evaluate(1.0)));
    CHECK(f.u(3.0) * f.v(3.0) == doctest::Approx(0.0));
}

TEST_CASE("breakpoints include the discontinuities") {
    Potential v = Potential::square_well(-1.0, 1.5);
    bool found = false;
    for (double b : v.breakpoints())
        if (std::abs(b - 1.5) < 1e-15) found = true;
    CHECK(found);
}

TEST_CASE("truncate_and_split is consistent") {
    std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
    std::vector<double> vs{1.0, -2.0, 0.5, -0.25};
    Potential v = Potential::grid_sampled(xs, vs);
    auto ts = truncate_and_split(v, 2.0);
    for (double x = 0.1; x < 3.0; x += 0.23) {
        double expect = x < 2.0 ? v.evaluate(x) : 0.0;
        CHECK(ts.restricted.evaluate(x) == doctest::Approx(expect));
        // the sign parts split the full potential
        CHECK(ts.plus.evaluate(x) - ts.minus.evaluate(x) ==
              doctest::Approx(v.evaluate(x)));
    }
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(Potential::square_well(-1.0, -2.0), DomainError);
    CHECK_THROWS_AS(Potential::exponential(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(Potential::grid_sampled({0.0, 0.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(Potential::grid_sampled({0.0, 1.0}, {1.0}), DomainError);
}
