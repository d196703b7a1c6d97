#ifndef SSFLAB_QUADRATURE_HPP
#define SSFLAB_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace ssflab {

struct QuadResult {
    double value;
    double error;
};

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
/// Throws AccuracyError (carrying the best estimate) if tolerances are
/// not reached within the subdivision budget.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              double abs_tol = 1e-12, double rel_tol = 1e-10,
                              int max_subdivisions = 2000);

/// Semi-infinite version: maps (a, infty) to (0,1) via x = a + t/(1-t).
QuadResult integrate_to_infinity(const std::function<double(double)>& f,
                                 double a,
                                 double abs_tol = 1e-12, double rel_tol = 1e-10,
                                 int max_subdivisions = 2000);

/// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Legendre nodes/weights mapped onto [a,b], optionally split into
/// panels at the given interior breakpoints (nodes are distributed across
/// panels proportionally to panel length, at least 4 per panel).
void gauss_legendre_panels(int n, double a, double b,
                           const std::vector<double>& interior_breaks,
                           std::vector<double>& nodes, std::vector<double>& weights);

/// Trapezoid rule on a sorted, possibly nonuniform grid.
double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace ssflab

#endif
