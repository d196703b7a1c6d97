#ifndef SSFLAB_GREENS_HPP
#define SSFLAB_GREENS_HPP

#include "ssflab/potential.hpp"
#include "ssflab/solutions.hpp"
#include "ssflab/spectral.hpp"

namespace ssflab {

enum class Geometry { Interval, Halfline };

// |W| below this multiple of the solution scale counts as "on an eigenvalue"
constexpr double kWronskianThreshold = 1e-12;

/// Interval Green's function -psi_{0,a}(min) psi_{R,b}(max) / W(psi_{0,a}, psi_{R,b}).
Complex green_finite(const Potential& pot, const BoundaryCondition& alpha,
                     const BoundaryCondition& beta, double R,
                     const SpectralParameter& sp, double x, double xp,
                     const OdeOptions& opt = {});

/// Half-line Green's function -psi_{0,a}(min) psi_+(max) / W(psi_{0,a}, psi_+).
Complex green_halfline(const Potential& pot, const BoundaryCondition& alpha,
                       const SpectralParameter& sp, double x, double xp,
                       double tail_tol = 1e-10, const OdeOptions& opt = {});

/// Free (V = 0) kernels in closed form.
Complex free_green_finite(const BoundaryCondition& alpha, const BoundaryCondition& beta,
                          double R, const SpectralParameter& sp, double x, double xp);
Complex free_green_halfline(const BoundaryCondition& alpha, const SpectralParameter& sp,
                            double x, double xp);

/// |LHS - RHS| of the interval vs half-line comparison: the interval kernel
/// equals the half-line kernel plus a rank-one term built from psi_+ and
/// psi_{0,a}.
double krein_residual_interval(const Potential& pot, const BoundaryCondition& alpha,
                               const BoundaryCondition& beta, double R,
                               const SpectralParameter& sp, double x, double xp,
                               const OdeOptions& opt = {});

/// |LHS - RHS| of the two-angle half-line comparison (Krein's formula):
/// kernel at angle alpha_tilde vs kernel at alpha plus the rank-one
/// correction along psi_+.
double krein_residual_halfline(const Potential& pot, const BoundaryCondition& alpha,
                               const BoundaryCondition& alpha_tilde,
                               const SpectralParameter& sp, double x, double xp,
                               const OdeOptions& opt = {});

/// Modified Bessel K0 via its integral representation
/// K0(t) = int_0^inf exp(-t cosh u) du, with a series fallback below t = 1e-3.
double bessel_k0(double t);

/// Kernel of (H0 + E)^{-q} for the free Dirichlet operator, 0 < q < 1.
/// q = 1/2 uses the specialized forms (hyperbolic s-integral on the interval,
/// K0 difference on the half-line); other q integrate t^{-q} against the
/// free Green kernel at -E - t.
double frac_power_kernel(Geometry geom, double R, double E, double q, double x,
                         double xp);

} // namespace ssflab

#endif
