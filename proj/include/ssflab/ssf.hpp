#ifndef SSFLAB_SSF_HPP
#define SSFLAB_SSF_HPP

#include <functional>
#include <vector>

#include "ssflab/determinants.hpp"
#include "ssflab/greens.hpp"
#include "ssflab/potential.hpp"
#include "ssflab/spectral.hpp"

namespace ssflab {

enum class XiMethod { Counting, Phase };

/// xi on a sorted lambda grid, normalized to 0 at the anchor (first grid
/// point, below both spectra).
struct SpectralShiftGrid {
    std::vector<double> lambdas;
    std::vector<double> values;
    XiMethod method = XiMethod::Counting;
    Geometry geometry = Geometry::Interval;
    double alpha = 0.0;
    double beta = 0.0;          // interval geometry only
    double R = 0.0;             // interval geometry only
    double epsilon_scale = 0.0; // phase method: epsilon = scale * (1 + |lambda|)
    double anchor = 0.0;

    double value_at(double lambda) const; // linear interpolation inside the grid
};

/// Number of eigenvalues <= lambda of -d^2/dx^2 + V on (0,R) with boundary
/// angles (alpha, beta), by Prufer-angle shooting. Ties at exact eigenvalues
/// count (closed counting).
int count_states(const Potential& pot, const BoundaryCondition& alpha,
                 const BoundaryCondition& beta, double R, double lambda,
                 const OdeOptions& opt = {1e-10, 1e-10, 1e-3, 1e-14});

/// All eigenvalues <= lambda_max of the interval operator, ascending.
/// Newton iteration on the Prufer angle at x=R (augmented with its
/// lambda-derivative), walking up the target ladder.
std::vector<double> interval_eigenvalues(const Potential& pot,
                                         const BoundaryCondition& alpha,
                                         const BoundaryCondition& beta, double R,
                                         double lambda_max,
                                         const OdeOptions& opt = {1e-10, 1e-10, 1e-3,
                                                                  1e-14});

/// Counting-function difference N(.;ref) - N(.;pot) on the grid.
SpectralShiftGrid xi_finite_pair(const Potential& pot, const Potential& ref,
                                 const BoundaryCondition& alpha,
                                 const BoundaryCondition& beta, double R,
                                 const std::vector<double>& lambdas, int threads = 1);

/// Same with the free reference.
SpectralShiftGrid xi_finite(const Potential& pot, const BoundaryCondition& alpha,
                            const BoundaryCondition& beta, double R,
                            const std::vector<double>& lambdas, int threads = 1);

/// Half-line xi from the determinant's boundary phase:
/// xi(lambda) = pi^{-1} Im ln det at lambda + i*eps, unwrapped continuously
/// from the anchor, Richardson-extrapolated over (eps, eps/2) with
/// eps = eps_scale*(1+|lambda|). `ref` replaces the free comparison operator
/// (its determinant divides out); pass the zero potential for the plain case.
SpectralShiftGrid xi_halfline_phase_pair(const Potential& pot, const Potential& ref,
                                         const BoundaryCondition& alpha,
                                         const std::vector<double>& lambdas,
                                         double eps_scale = 1e-4,
                                         double tail_tol = 1e-10, int threads = 1);

SpectralShiftGrid xi_halfline_phase(const Potential& pot, const BoundaryCondition& alpha,
                                    const std::vector<double>& lambdas,
                                    double eps_scale = 1e-4, double tail_tol = 1e-10,
                                    int threads = 1);

/// Splits xi into nonnegative parts via the intermediate operator H0 + V+:
/// xi_plus = xi(.; H0+V+, H0) >= 0, xi_minus = -xi(.; H, H0+V+) >= 0, and
/// xi = xi_plus - xi_minus on the grid. R/beta ignored for the half-line.
struct SignSplit {
    SpectralShiftGrid plus;
    SpectralShiftGrid minus;
};
SignSplit xi_sign_split(const Potential& pot, Geometry geom,
                        const BoundaryCondition& alpha, const BoundaryCondition& beta,
                        double R, const std::vector<double>& lambdas,
                        int threads = 1);

/// Negative eigenvalues of the half-line operator, found as sign changes of
/// the (real) determinant on the negative axis, refined by bisection.
std::vector<double> halfline_bound_states(const Potential& pot,
                                          const BoundaryCondition& alpha,
                                          double tail_tol = 1e-10);

/// |LHS - RHS| / |RHS| of the resolvent trace formula at order n:
/// (d/dz)^n ln det = n! * int xi(lambda) dlambda / (lambda - z)^{n+1}.
/// LHS by a Cauchy contour around z (radius contour_radius), RHS by grid
/// quadrature plus an analytic tail bound requiring |xi| < 0.02 at the end.
double trace_formula_residual_halfline(const Potential& pot,
                                       const BoundaryCondition& alpha, Complex z,
                                       const SpectralShiftGrid& xi, int n,
                                       double contour_radius = 1.0);

double trace_formula_residual_finite(const Potential& pot,
                                     const BoundaryCondition& alpha,
                                     const BoundaryCondition& beta, double R,
                                     Complex z, const SpectralShiftGrid& xi, int n,
                                     double contour_radius = 1.0);

/// Continuous phase of f along the sorted grid, bisection-refining any step
/// with increment >= pi/2 (max depth 12, else GridRefinementError). values
/// must hold f(lambdas[j]). Returned phases start at the principal argument
/// of the first value.
std::vector<double> unwrap_phase(const std::function<Complex(double)>& f,
                                 const std::vector<double>& lambdas,
                                 const std::vector<Complex>& values,
                                 int max_depth = 12);

} // namespace ssflab

#endif
