#ifndef SSFLAB_CONVERGENCE_HPP
#define SSFLAB_CONVERGENCE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ssflab/ssf.hpp"

namespace ssflab {

/// Bounded test function against which xi d-lambda/(1+lambda^2) is integrated.
struct TestFunction {
    enum class Kind { Constant, Rational, Gaussian, Sigmoid, Indicator, MollifiedIndicator };

    Kind kind = Kind::Constant;
    double p1 = 1.0; // constant value / center / left endpoint
    double p2 = 1.0; // width / right endpoint
    double p3 = 0.0; // mollifier width

    static TestFunction constant(double value = 1.0);
    static TestFunction rational();                       // 1/(1+lambda^2)
    static TestFunction gaussian(double center, double width);
    static TestFunction sigmoid(double center, double width);
    static TestFunction indicator(double e1, double e2);
    static TestFunction mollified_indicator(double e1, double e2, double width = 1e-2);

    double operator()(double lambda) const;
    double sup_abs() const;
    bool compact_support() const;
    // support endpoints for compactly supported kinds
    double support_left() const;
    double support_right() const;
    std::string describe() const;
};

/// Nonuniform lambda grid: starts below the spectra of both operators
/// (anchor), fine steps near 0 and near detected half-line bound states,
/// coarse elsewhere, up to lambda_max.
std::vector<double> build_lambda_grid(const Potential& pot,
                                      const BoundaryCondition& alpha,
                                      double lambda_max = 200.0,
                                      double coarse_step = 0.05,
                                      double fine_step = 1e-3,
                                      double fine_radius = 0.25,
                                      double tail_tol = 1e-10);

struct WeightedIntegral {
    double value;
    double tail_bound; // certified bound on the neglected tail
};

/// int xi(lambda) f(lambda) dlambda / (1+lambda^2) over the grid. For
/// non-compactly-supported f the grid must end with |xi| <= tail_threshold
/// (else TailError); the reported tail bound is tail_threshold * sup|f| *
/// (pi/2 - atan(lambda_end)).
WeightedIntegral weighted_integral(const SpectralShiftGrid& xi, const TestFunction& f,
                                   double tail_threshold = 0.05);

/// int xi(lambda) dlambda / ((lambda - a)(lambda - z)^n).
Complex moment_integral(const SpectralShiftGrid& xi, Complex a, Complex z, int n);

/// int_{E1}^{E2} xi dlambda (endpoints inside the grid, linear interpolation
/// at partial cells).
double interval_mass(const SpectralShiftGrid& xi, double e1, double e2);

/// int_{a}^{b} xi dlambda / (1+lambda^2), same endpoint handling.
double weighted_mass_between(const SpectralShiftGrid& xi, double a, double b);

/// sigma(lambda) = int_{anchor}^{lambda} xi_pm dlambda' / (1+lambda'^2) for a
/// nonnegative sign-split grid; values below -1e-9 raise DomainError.
double distribution_function(const SpectralShiftGrid& xi_pm, double lambda);

struct ScanEntry {
    double R = 0.0;
    std::vector<double> weighted; // per test function
    std::vector<double> masses;   // per mass window
    double det_gap = 0.0;         // |det_R(-1) - det_inf(-1)|
    double sup_gap = 0.0;         // sup over the lambda window of |xi_R - xi_inf|
    std::string error;            // nonempty if this R failed
};

struct ScanReport {
    std::vector<double> R_values;
    std::vector<TestFunction> fs;
    std::vector<std::pair<double, double>> mass_windows;
    std::pair<double, double> sup_window;
    std::vector<double> lambda_grid;
    std::vector<double> xi_ref;       // half-line reference on lambda_grid
    std::vector<double> ref_weighted; // per test function
    std::vector<double> ref_masses;   // per mass window
    double det_ref = 0.0;             // det_inf(-1), real below the spectrum
    std::vector<ScanEntry> entries;
};

/// The R -> infinity laboratory: counting xi on (0,R) against the half-line
/// phase reference, with weighted integrals, interval masses, determinant
/// gap at z = -1, and the sup gap on a fixed window. Per-R failures are
/// recorded in the entry, not thrown.
ScanReport scan_infinite_volume(const Potential& pot, const BoundaryCondition& alpha,
                                const BoundaryCondition& beta,
                                const std::vector<TestFunction>& fs,
                                const std::vector<double>& R_list,
                                std::pair<double, double> sup_window,
                                const std::vector<std::pair<double, double>>& mass_windows,
                                int threads = 1);

/// Midpoint average (1/R) int_0^R xi(lambda; H_r, H0_r) dr with m samples.
/// lambda must stay 1e-3 away from 0 and from half-line bound states.
double cesaro_mean(const Potential& pot, const BoundaryCondition& alpha,
                   const BoundaryCondition& beta, double lambda, double R, int m,
                   int threads = 1);

/// Random check of the rank-one truncation bound: for T = g f^T and
/// coordinate projections P_n, trace norm of T - (P_n T P_n) is at most
/// ||(I-P_n)f|| ||g|| + ||P_n f|| ||(I-P_n)g||. Returns the largest
/// (trace norm - bound) over the trials; the exact trace norm comes from a
/// 2x2 reduction of the rank-2 difference.
double rank_one_gap(int dim, int trials, std::uint64_t seed);

} // namespace ssflab

#endif
