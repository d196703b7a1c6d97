// End-to-end acceptance gate. Each numbered check prints exactly one
// PASS/FAIL line with the measured quantity and the pinned tolerance; the
// process exits nonzero if any check fails. Tolerances are empirical choices
// frozen here, not derived error bounds.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ssflab/convergence.hpp"
#include "ssflab/decomposition.hpp"
#include "ssflab/determinants.hpp"
#include "ssflab/greens.hpp"
#include "ssflab/ssf.hpp"

using namespace ssflab;

namespace {

constexpr int kThreads = 4;
int g_failures = 0;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    std::printf("[%2d] %s  %-46s %s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void guarded(int id, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, name, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// ------------------------------------------------------------------ 1

void check_jost_pais_matrix() {
    const std::string name = "determinant equivalence matrix";
    double t0 = now_seconds();
    std::vector<Potential> pots{Potential::square_well(-1.0, 1.0),
                                Potential::exponential(-2.0, 1.0)};
    std::vector<double> angles{0.0, M_PI / 4, M_PI / 2};
    std::vector<Complex> zs{Complex(-1, 0), Complex(-5, 0), Complex(1, 1)};
    const double R = 2.0, tol = 1e-5;

    double worst = 0.0;
    int entries = 0, singular = 0;
    for (const auto& pot : pots)
        for (double a : angles)
            for (double b : angles)
                for (const Complex& z : zs) {
                    ++entries;
                    SpectralParameter sp(z);
                    BoundaryCondition ba(a), bb(b);
                    bool w_sing = false, n_sing = false;
                    Complex dw{}, dn{};
                    try {
                        dw = det_wronskian_finite(pot, ba, bb, R, sp);
                    } catch (const NearEigenvalueError&) {
                        w_sing = true;
                    }
                    try {
                        dn = det_nystrom_finite(pot, ba, bb, R, sp, 400);
                    } catch (const NearEigenvalueError&) {
                        n_sing = true;
                    }
                    if (w_sing || n_sing) {
                        // z sits in the free spectrum (e.g. both angles pi/4 at
                        // z = -1, where e^{-x} solves both boundary conditions);
                        // agreement means both routes reject consistently
                        if (w_sing && n_sing) {
                            ++singular;
                            continue;
                        }
                        report(1, false, name,
                               fmt("routes disagree on singular entry a=%.3f b=%.3f "
                                   "z=(%g,%g)",
                                   a, b, z.real(), z.imag()));
                        return;
                    }
                    worst = std::max(worst, std::abs(dw - dn) / std::abs(dw));
                }
    double dt = now_seconds() - t0;
    report(1, worst <= tol && dt < 30.0, name,
           fmt("worst rel %.2e <= %.0e over %d entries (%d singular, consistent), "
               "%.1f s < 30 s",
               worst, tol, entries, singular, dt));
}

// ------------------------------------------------------------------ 2

void check_free_closed_forms() {
    const std::string name = "free closed forms";
    Potential z0 = Potential::zero();
    double worst_w = 0.0;
    for (Complex z : {Complex(-1, 0), Complex(-4, 0), Complex(2, 0.5)}) {
        SpectralParameter sp(z);
        for (double a : {0.0, M_PI / 4}) {
            for (double b : {0.0, M_PI / 3}) {
                BoundaryCondition ba(a), bb(b);
                auto l = solve_weyl_left(z0, ba, sp, {1.3});
                auto r = solve_weyl_right(z0, bb, 2.0, sp, {1.3});
                Complex direct = wronskian(r[0], l[0]);
                Complex closed = free_wronskian_finite(ba, bb, 2.0, sp);
                worst_w = std::max(worst_w, std::abs(direct - closed) / std::abs(closed));
            }
            BoundaryCondition ba(a);
            auto l = solve_weyl_left(z0, ba, sp, {0.9});
            auto j = solve_jost(z0, sp, {0.9});
            Complex direct = wronskian(j.samples[0], l[0]);
            Complex closed = free_wronskian_halfline(ba, sp);
            // at z = -1, a = pi/4 this Wronskian vanishes (e^{-x} satisfies the
            // boundary condition), so gauge the gap absolutely there
            double scale = std::max(std::abs(closed), 1.0);
            worst_w = std::max(worst_w, std::abs(direct - closed) / scale);
        }
    }

    BoundaryCondition d(0.0);
    SpectralParameter sm(Complex(-1.0, 0.0));
    double g_int = free_green_finite(d, d, 1.0, sm, 0.5, 0.5).real();
    double g_half = free_green_halfline(d, sm, 0.5, 0.5).real();
    double e_int = std::abs(g_int - std::sinh(0.5) * std::sinh(0.5) / std::sinh(1.0));
    double e_half = std::abs(g_half - std::sinh(0.5) * std::exp(-0.5));

    bool pass = worst_w <= 1e-9 && e_int <= 1e-8 && e_half <= 1e-8 &&
                std::abs(g_int - 0.231058) < 1e-6 && std::abs(g_half - 0.316060) < 1e-6;
    report(2, pass, name,
           fmt("Wronskian rel %.2e <= 1e-9; kernels 0.231058/0.316060 hit to %.1e/%.1e "
               "<= 1e-8",
               worst_w, e_int, e_half));
}

// ------------------------------------------------------------------ 3

void check_global_zero() {
    const std::string name = "zero potential is globally quiet";
    Potential z0 = Potential::zero();
    BoundaryCondition a(M_PI / 4), b(M_PI / 3), d(0.0);
    SpectralParameter sp(Complex(-2.0, 0.4));

    bool dets = det_wronskian_finite(z0, a, b, 3.0, sp) == Complex(1.0, 0.0) &&
                det_wronskian_halfline(z0, a, sp) == Complex(1.0, 0.0) &&
                det_nystrom_finite(z0, a, b, 3.0, sp, 64) == Complex(1.0, 0.0) &&
                det_nystrom_halfline(z0, a, sp, 64) == Complex(1.0, 0.0);

    std::vector<double> grid;
    for (double l = -2.0; l <= 30.0; l += 0.25) grid.push_back(l);
    SpectralShiftGrid xi = xi_finite(z0, d, d, 10.0, grid, kThreads);
    bool xis = true;
    for (double v : xi.values) xis = xis && v == 0.0;

    ScanReport rep = scan_infinite_volume(z0, d, d, {TestFunction::constant(1.0)},
                                          {5.0, 10.0}, {0.5, 4.0}, {{-1.0, 0.0}},
                                          kThreads);
    bool scan = true;
    for (const auto& e : rep.entries)
        scan = scan && e.error.empty() && e.weighted[0] == 0.0 && e.masses[0] == 0.0 &&
               e.det_gap == 0.0 && e.sup_gap == 0.0;

    report(3, dets && xis && scan, name,
           fmt("determinants == 1: %s, xi == 0: %s, scan gaps == 0: %s (all exact)",
               dets ? "yes" : "no", xis ? "yes" : "no", scan ? "yes" : "no"));
}

// ------------------------------------------------------------------ 4

void check_det_convergence() {
    const std::string name = "determinant volume convergence";
    double t0 = now_seconds();
    Potential v = Potential::exponential(-2.0, 1.0);
    BoundaryCondition a(0.0);
    SpectralParameter sp(Complex(-1.0, 0.0));
    Complex ref = det_wronskian_halfline(v, a, sp);

    bool decreasing = true;
    double final_gap = 0.0;
    std::string trail;
    for (double beta : {0.0, M_PI / 4}) {
        BoundaryCondition b(beta);
        double prev = 1e300;
        for (double R : {5.0, 10.0, 20.0, 30.0}) {
            double gap = std::abs(det_wronskian_finite(v, a, b, R, sp) - ref);
            // the true gap shrinks like e^{-2 kappa R} and drops below the
            // transport accuracy (~1e-11) by R = 20; once both neighbours sit
            // under 1e-9 the ordering is solver noise, not signal
            decreasing = decreasing && (gap < prev || (gap <= 1e-9 && prev <= 1e-9));
            prev = gap;
            if (R == 30.0) {
                final_gap = std::max(final_gap, gap);
                trail += fmt("%sbeta=%.2f: %.1e", trail.empty() ? "" : ", ", beta, gap);
            }
        }
    }
    double dt = now_seconds() - t0;
    report(4, decreasing && final_gap <= 1e-3 && dt < 10.0, name,
           fmt("gaps decreasing over R in {5,10,20,30}; at R=30 %s <= 1e-3; %.1f s < 10 s",
               trail.c_str(), dt));
}

// ------------------------------------------------------- 5, 6, 7 (one scan)

void check_scan_trio() {
    double t0 = now_seconds();
    Potential well = Potential::square_well(-1.0, 1.0);
    BoundaryCondition d(0.0);
    std::vector<TestFunction> fs{
        TestFunction::constant(1.0), TestFunction::gaussian(1.0, 1.0),
        TestFunction::sigmoid(1.0, 1.0),
        // width 0.2: narrower mollifiers leave boundary oscillation that breaks
        // strict decrease at small R without changing the limit
        TestFunction::mollified_indicator(0.0, 1.0, 0.2)};
    ScanReport rep = scan_infinite_volume(well, d, d, fs, {5.0, 10.0, 20.0, 40.0},
                                          {0.5, 4.0}, {{-1.0, 0.0}, {0.0, 2.0}},
                                          kThreads);
    double dt = now_seconds() - t0;

    for (const auto& e : rep.entries) {
        if (!e.error.empty()) {
            report(5, false, "weak convergence of weighted integrals",
                   "scan entry R=" + fmt("%g", e.R) + " failed: " + e.error);
            report(6, false, "interval spectral masses", "scan failed upstream");
            report(7, false, "pointwise gap persists", "scan failed upstream");
            return;
        }
    }

    bool decreasing = true;
    double final_err = 0.0;
    for (std::size_t f = 0; f < fs.size(); ++f) {
        double prev = 1e300;
        for (const auto& e : rep.entries) {
            double err = std::abs(e.weighted[f] - rep.ref_weighted[f]);
            decreasing = decreasing && err < prev;
            prev = err;
            if (&e == &rep.entries.back()) final_err = std::max(final_err, err);
        }
    }
    report(5, decreasing && final_err <= 5e-2 && dt < 300.0,
           "weak convergence of weighted integrals",
           fmt("errors decreasing for all 4 test functions, final max %.2e <= 5e-2, "
               "%.0f s < 300 s",
               final_err, dt));

    const auto& last = rep.entries.back();
    double mass_err = 0.0;
    for (std::size_t w = 0; w < rep.mass_windows.size(); ++w)
        mass_err = std::max(mass_err, std::abs(last.masses[w] - rep.ref_masses[w]));
    report(6, mass_err <= 5e-2, "interval spectral masses",
           fmt("window errors at R=40 max %.2e <= 5e-2", mass_err));

    double min_sup = 1e300;
    for (const auto& e : rep.entries) min_sup = std::min(min_sup, e.sup_gap);
    report(7, min_sup >= 0.3, "pointwise gap persists",
           fmt("sup gap on [0.5,4] min %.2f >= 0.3 at every R", min_sup));
}

// ------------------------------------------------------------------ 8

void check_counting_vs_phase() {
    const std::string name = "counting vs phase, 50 negative energies";
    Potential well = Potential::square_well(-4.0, 2.0);
    BoundaryCondition d(0.0);
    auto bs = halfline_bound_states(well, d);
    double eig = bs.empty() ? -2.469 : bs[0];

    std::vector<double> grid{-4.2}; // anchor below the whole spectrum
    int wanted = 50;
    for (double l = -3.9; grid.size() < std::size_t(wanted + 1); l += 0.0779) {
        if (l >= -0.05) break;
        if (std::abs(l - eig) < 2e-2) continue; // stay off the eigenvalue
        grid.push_back(l);
    }
    SpectralShiftGrid cnt = xi_finite(well, d, d, 60.0, grid, kThreads);
    SpectralShiftGrid ph = xi_halfline_phase(well, d, grid, 1e-4, 1e-10, kThreads);
    int agree = 0, total = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        ++total;
        if (std::round(ph.values[i]) == cnt.values[i]) ++agree;
    }
    report(8, total >= 50 && agree == total, name,
           fmt("%d/%d rounded-phase values equal the R=60 counting values", agree,
               total));
}

// ------------------------------------------------------------------ 9

void check_trace_formula() {
    const std::string name = "resolvent trace formula";
    Potential well = Potential::square_well(-1.0, 1.0);
    BoundaryCondition d(0.0);
    auto grid = build_lambda_grid(well, d);
    SpectralShiftGrid xi = xi_halfline_phase(well, d, grid, 1e-4, 1e-10, kThreads);
    double r1 = trace_formula_residual_halfline(well, d, Complex(-5.0, 0.0), xi, 1);
    double r2 = trace_formula_residual_halfline(well, d, Complex(-5.0, 0.0), xi, 2);
    report(9, r1 <= 1e-3 && r2 <= 5e-3, name,
           fmt("relative residuals %.2e <= 1e-3 (order 1), %.2e <= 5e-3 (order 2) at "
               "z=-5",
               r1, r2));
}

// ------------------------------------------------------------------ 10

void check_splitting_identity() {
    const std::string name = "Dirichlet splitting bookkeeping";
    SplitGeometry split(2.0, 4.0);
    BoundaryCondition d(0.0);
    std::vector<Potential> pots{Potential::square_well(-1.0, 1.0),
                                Potential::gaussian_bump(-2.0, 0.6, 2.0)};
    std::vector<double> grid;
    for (double l = -3.0; l <= 25.0; l += 0.487) grid.push_back(l);

    bool ok = true;
    std::string why = "correction integer-valued and equal to the direct count "
                      "difference at every sampled energy";
    for (const auto& pot : pots) {
        SpectralShiftGrid corr = xi_split_correction(pot, split, grid, kThreads);
        Potential right = pot.shifted(split.R1);
        for (std::size_t i = 0; i < grid.size() && ok; ++i) {
            double l = grid[i];
            // independent route: raw eigenvalue counts of the four operators
            int pieces = count_states(pot, d, d, split.R1, l) +
                         count_states(right, d, d, split.R2 - split.R1, l);
            int full = count_states(pot, d, d, split.R2, l);
            int free_pieces = oracle::dirichlet_count(split.R1, l) +
                              oracle::dirichlet_count(split.R2 - split.R1, l);
            int free_full = oracle::dirichlet_count(split.R2, l);
            double expect = (free_full - full) - (free_pieces - pieces);
            if (corr.values[i] != expect || corr.values[i] != std::round(corr.values[i])) {
                ok = false;
                why = fmt("mismatch at lambda=%.3f: correction %g vs counts %g", l,
                          corr.values[i], expect);
            }
        }
    }
    report(10, ok, name, why);
}

// ------------------------------------------------------------------ 11

void check_monotonicity() {
    const std::string name = "kernel dominance and shift sign";
    BoundaryCondition d(0.0);
    double R = 2.0, E = 1.0;
    SpectralParameter sp(Complex(-E, 0.0));
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
        for (int j = 1; j <= 10; ++j) {
            double x = R * i / 11.0, xp = R * j / 11.0;
            double gi = free_green_finite(d, d, R, sp, x, xp).real();
            double gh = free_green_halfline(d, sp, x, xp).real();
            worst = std::max(worst, -gi);      // interval kernel nonnegative
            worst = std::max(worst, gi - gh);  // dominated by the half-line kernel
            double ki = frac_power_kernel(Geometry::Interval, R, E, 0.5, x, xp);
            double kh = frac_power_kernel(Geometry::Halfline, 0.0, E, 0.5, x, xp);
            worst = std::max(worst, -ki);
            worst = std::max(worst, ki - kh);
        }
    }

    std::vector<double> grid;
    for (double l = -3.0; l <= 20.0; l += 0.41) grid.push_back(l);
    SpectralShiftGrid up =
        xi_finite(Potential::gaussian_bump(2.0, 0.5, 1.0), d, d, 8.0, grid, kThreads);
    SpectralShiftGrid down =
        xi_finite(Potential::square_well(-1.0, 1.0), d, d, 8.0, grid, kThreads);
    bool signs = true;
    for (double v : up.values) signs = signs && v >= 0.0;
    for (double v : down.values) signs = signs && v <= 0.0;

    report(11, worst <= 1e-10 && signs, name,
           fmt("dominance violations max %.1e <= 1e-10 on 10x10 grids; "
               "sign-definite V gives sign-definite shift: %s",
               worst, signs ? "yes" : "no"));
}

// ------------------------------------------------------------------ 12

void check_trace_norm_scaling() {
    const std::string name = "trace norm energy scaling";
    Potential v = Potential::exponential(-2.0, 1.0);
    BoundaryCondition d(0.0);
    double t4 = trace_norm_bs_halfline(v, d, 4.0, 400);
    double t16 = trace_norm_bs_halfline(v, d, 16.0, 400);
    double ratio = t4 / t16;
    report(12, ratio >= 1.6 && ratio <= 2.4, name,
           fmt("value(E=4)/value(E=16) = %.3f in [1.6, 2.4]", ratio));
}

// ------------------------------------------------------------------ 13

void check_rank_one_bound() {
    const std::string name = "rank-one truncation bound";
    double gap = rank_one_gap(50, 1000, 12345u);
    report(13, gap <= 1e-12, name,
           fmt("max (trace norm - bound) = %.2e <= 1e-12 over 1000 trials, dim 50",
               gap));
}

// ------------------------------------------------------------------ 14

void check_cesaro() {
    const std::string name = "Cesaro radial average";
    Potential well = Potential::square_well(-1.0, 1.0);
    BoundaryCondition d(0.0);
    auto grid = build_lambda_grid(well, d, 60.0);
    SpectralShiftGrid ref = xi_halfline_phase(well, d, grid, 1e-4, 1e-10, kThreads);
    double target = ref.value_at(2.0);
    double mean = cesaro_mean(well, d, d, 2.0, 40.0, 80, kThreads);
    report(14, std::abs(mean - target) <= 0.1, name,
           fmt("mean %.4f vs limit %.4f, |gap| %.3f <= 0.1", mean, target,
               std::abs(mean - target)));
}

} // namespace

int main() {
    now_seconds();
    guarded(1, "determinant equivalence matrix", check_jost_pais_matrix);
    guarded(2, "free closed forms", check_free_closed_forms);
    guarded(3, "zero potential is globally quiet", check_global_zero);
    guarded(4, "determinant volume convergence", check_det_convergence);
    try {
        check_scan_trio();
    } catch (const std::exception& e) {
        report(5, false, "weak convergence of weighted integrals",
               std::string("exception: ") + e.what());
        report(6, false, "interval spectral masses", "scan failed upstream");
        report(7, false, "pointwise gap persists", "scan failed upstream");
    }
    guarded(8, "counting vs phase, 50 negative energies", check_counting_vs_phase);
    guarded(9, "resolvent trace formula", check_trace_formula);
    guarded(10, "Dirichlet splitting bookkeeping", check_splitting_identity);
    guarded(11, "kernel dominance and shift sign", check_monotonicity);
    guarded(12, "trace norm energy scaling", check_trace_norm_scaling);
    guarded(13, "rank-one truncation bound", check_rank_one_bound);
    guarded(14, "Cesaro radial average", check_cesaro);

    std::printf("%s: %d failure%s\n", g_failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE OK",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures ? 1 : 0;
}
