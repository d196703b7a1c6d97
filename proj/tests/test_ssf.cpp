#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ssflab/ssf.hpp"

using namespace ssflab;

TEST_CASE("free eigenvalue counting on closed-form spectra") {
    Potential z0 = Potential::zero();
    BoundaryCondition d(0.0), n(M_PI / 2);

    // Dirichlet-Dirichlet on (0,pi): eigenvalues k^2
    CHECK(count_states(z0, d, d, M_PI, 1.5) == 1);
    CHECK(count_states(z0, d, d, M_PI, 0.5) == 0);
    CHECK(count_states(z0, d, d, M_PI, 4.5) == 2);
    // closed counting: a tie at the eigenvalue itself is included
    CHECK(count_states(z0, d, d, M_PI, 1.0) == 1);

    // Neumann-Neumann on (0,pi): eigenvalues k^2, k >= 0
    CHECK(count_states(z0, n, n, M_PI, -0.5) == 0);
    CHECK(count_states(z0, n, n, M_PI, 0.5) == 1);
    CHECK(count_states(z0, n, n, M_PI, 1.5) == 2);

    // mixed on (0,pi): eigenvalues (k + 1/2)^2
    CHECK(count_states(z0, d, n, M_PI, 0.5) == 1);
    CHECK(count_states(z0, n, d, M_PI, 0.2) == 0);

    // larger interval against the explicit ladder
    for (double lam : {3.0, 11.0, 40.0})
        CHECK(count_states(z0, d, d, 7.0, lam) == oracle::dirichlet_count(7.0, lam));
}

TEST_CASE("eigenvalue solver reproduces the Dirichlet ladder") {
    Potential z0 = Potential::zero();
    BoundaryCondition d(0.0);
    auto got = interval_eigenvalues(z0, d, d, 3.0, 30.0);
    auto ref = oracle::dirichlet_ladder(3.0, 30.0);
    REQUIRE(got.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
        CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-8));
}

TEST_CASE("eigenvalue solver shifts under a constant-like well") {
    // inside a wide well the low eigenvalues sit near ladder + depth
    Potential well = Potential::square_well(-1.0, 50.0);
    BoundaryCondition d(0.0);
    auto got = interval_eigenvalues(well, d, d, 50.0, 0.0);
    auto free_ladder = oracle::dirichlet_ladder(50.0, 1.0);
    REQUIRE(!got.empty());
    CHECK(got[0] == doctest::Approx(free_ladder[0] - 1.0).epsilon(1e-4));
}

TEST_CASE("counting shift of the square well matches bound-state bookkeeping") {
    // free counting is zero below zero, so xi = -N there
    Potential well = Potential::square_well(-1.0, 1.0);
    BoundaryCondition d(0.0);
    int n_below = count_states(well, d, d, 10.0, -0.5);
    std::vector<double> grid{-2.0, -0.5};
    SpectralShiftGrid xi = xi_finite(well, d, d, 10.0, grid);
    CHECK(xi.values[1] == doctest::Approx(-double(n_below)));
}

TEST_CASE("counting grids are integer-valued and anchored at zero") {
    Potential well = Potential::square_well(-4.0, 2.0);
    BoundaryCondition d(0.0);
    std::vector<double> grid;
    for (double l = -6.0; l <= 10.0; l += 0.37) grid.push_back(l);
    SpectralShiftGrid xi = xi_finite(well, d, d, 8.0, grid);
    CHECK(xi.values.front() == 0.0);
    for (double v : xi.values) CHECK(v == std::round(v));
}

TEST_CASE("deep-well bound state on the half-line") {
    Potential well = Potential::square_well(-4.0, 2.0);
    auto bs = halfline_bound_states(well, BoundaryCondition(0.0));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0] == doctest::Approx(-2.46911743).epsilon(1e-6));

    // shallow well: no bound state with a Dirichlet wall
    CHECK(halfline_bound_states(Potential::square_well(-1.0, 1.0),
                                BoundaryCondition(0.0))
              .empty());
}

TEST_CASE("phase-route shift has the bound-state plateau") {
    Potential well = Potential::square_well(-4.0, 2.0);
    BoundaryCondition d(0.0);
    std::vector<double> grid{-4.0, -3.0, -2.0, -1.5, -1.0, -0.5};
    SpectralShiftGrid xi = xi_halfline_phase(well, d, grid);
    CHECK(xi.values.front() == 0.0);
    // between the bound state (-2.469) and zero the shift is -1
    for (std::size_t i = 2; i < grid.size(); ++i)
        CHECK(xi.values[i] == doctest::Approx(-1.0).epsilon(2e-3));
    CHECK(xi.values[1] == doctest::Approx(0.0).epsilon(2e-3));
}

TEST_CASE("sign split recombines exactly for counting grids") {
    std::vector<double> xs{0.0, 0.8, 1.6, 2.4, 3.2};
    std::vector<double> vs{1.5, -2.0, 1.0, -0.5, 0.0};
    Potential v = Potential::grid_sampled(xs, vs);
    BoundaryCondition d(0.0);
    std::vector<double> grid;
    for (double l = -4.0; l <= 12.0; l += 0.61) grid.push_back(l);
    SignSplit sp = xi_sign_split(v, Geometry::Interval, d, d, 9.0, grid);
    SpectralShiftGrid xi = xi_finite(v, d, d, 9.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(sp.plus.values[i] >= 0.0);
        CHECK(sp.minus.values[i] >= 0.0);
        CHECK(sp.plus.values[i] - sp.minus.values[i] == doctest::Approx(xi.values[i]));
    }
}

TEST_CASE("phase unwrapping follows a known winding") {
    // f(l) = e^{3 i l}: phase must come out linear, not wrapped
    auto f = [](double l) { return std::exp(Complex(0.0, 3.0 * l)); };
    std::vector<double> grid;
    std::vector<Complex> vals;
    for (double l = 0.0; l <= 5.0; l += 0.25) {
        grid.push_back(l);
        vals.push_back(f(l));
    }
    auto ph = unwrap_phase(f, grid, vals);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(ph[i] == doctest::Approx(3.0 * grid[i]).epsilon(1e-10));
}

TEST_CASE("grid interpolation clamps at the ends") {
    SpectralShiftGrid g;
    g.lambdas = {0.0, 1.0, 2.0};
    g.values = {0.0, -1.0, -1.0};
    CHECK(g.value_at(0.5) == doctest::Approx(-0.5));
    CHECK(g.value_at(-3.0) == 0.0);
    CHECK(g.value_at(9.0) == -1.0);
}

TEST_CASE("trace formula holds for the free operator") {
    // xi = 0 identically, so both sides vanish; the residual is defined
    // relative to machine-floor magnitudes and must come out tiny
    Potential z0 = Potential::zero();
    BoundaryCondition d(0.0);
    SpectralShiftGrid xi;
    for (double l = -2.0; l <= 60.0; l += 0.1) {
        xi.lambdas.push_back(l);
        xi.values.push_back(0.0);
    }
    xi.anchor = -2.0;
    double r = trace_formula_residual_halfline(z0, d, Complex(-5.0, 0.0), xi, 1);
    CHECK(r < 1e-10);
}
