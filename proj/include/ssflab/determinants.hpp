#ifndef SSFLAB_DETERMINANTS_HPP
#define SSFLAB_DETERMINANTS_HPP

#include "ssflab/greens.hpp"
#include "ssflab/potential.hpp"
#include "ssflab/solutions.hpp"
#include "ssflab/spectral.hpp"

namespace ssflab {

/// Which endpoint carries the Wronskian data in the closed-form determinant.
/// Both give the same number; evaluating at the other end is a cheap
/// cross-check on the ODE transport.
enum class WronskianVariant { AtRightEndpoint, AtOrigin };

/// Perturbation determinant det(I + u (H0 - z)^{-1} v) on (0,R) via the
/// Wronskian quotient: perturbed two-point Wronskian over the free one.
Complex det_wronskian_finite(const Potential& pot, const BoundaryCondition& alpha,
                             const BoundaryCondition& beta, double R,
                             const SpectralParameter& sp,
                             WronskianVariant variant = WronskianVariant::AtRightEndpoint,
                             const OdeOptions& opt = {});

/// Half-line analogue: (sin a psi_+'(0) + cos a psi_+(0)) / (cos a + i w sin a).
Complex det_wronskian_halfline(const Potential& pot, const BoundaryCondition& alpha,
                               const SpectralParameter& sp, double tail_tol = 1e-10,
                               const OdeOptions& opt = {});

/// Fredholm determinant by Nystrom discretization: composite Gauss-Legendre
/// with panel edges at the potential breakpoints, M_jk = sqrt(w_j) u(x_j)
/// G0(z;x_j,x_k) v(x_k) sqrt(w_k), det(I + M) by LU.
Complex det_nystrom_finite(const Potential& pot, const BoundaryCondition& alpha,
                           const BoundaryCondition& beta, double R,
                           const SpectralParameter& sp, int n);

Complex det_nystrom_halfline(const Potential& pot, const BoundaryCondition& alpha,
                             const SpectralParameter& sp, int n,
                             double tail_tol = 1e-10);

/// Trace norm of the Birman-Schwinger operator v (H0 + E)^{-1} v at a point
/// -E below the spectrum (self-adjoint there: sum of |eigenvalues| of the
/// symmetrized Nystrom matrix).
double trace_norm_bs_finite(const Potential& pot, const BoundaryCondition& alpha,
                            const BoundaryCondition& beta, double R, double E, int n);

double trace_norm_bs_halfline(const Potential& pot, const BoundaryCondition& alpha,
                              double E, int n, double tail_tol = 1e-10);

} // namespace ssflab

#endif
