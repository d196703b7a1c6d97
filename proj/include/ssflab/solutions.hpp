#ifndef SSFLAB_SOLUTIONS_HPP
#define SSFLAB_SOLUTIONS_HPP

#include <vector>

#include "ssflab/ode.hpp"
#include "ssflab/potential.hpp"
#include "ssflab/spectral.hpp"

namespace ssflab {

enum class FreeKind { Left, Right, Jost };

/// Closed-form solutions of -psi'' = z psi:
///   left:  psi = cos(a) sin(wx)/w - sin(a) cos(wx)
///   right: psi = cos(b) sin(w(R-x))/w + sin(b) cos(w(R-x))
///   jost:  psi = exp(iwx)
SolutionSample free_solution(FreeKind which, const BoundaryCondition& bc, double R,
                             const SpectralParameter& sp, double x);

/// W of the free right and left solutions (constant in x):
/// sin(b-a) cos(wR) + sin(a) sin(b) w sin(wR) + cos(a) cos(b) sin(wR)/w.
Complex free_wronskian_finite(const BoundaryCondition& alpha, const BoundaryCondition& beta,
                              double R, const SpectralParameter& sp);

/// W of the free jost and left solutions: cos(a) + i w sin(a).
Complex free_wronskian_halfline(const BoundaryCondition& alpha, const SpectralParameter& sp);

/// Integrates -psi'' + V psi = z psi from x=0 with psi(0) = -sin(a),
/// psi'(0) = cos(a), returning samples at the requested ascending grid.
std::vector<SolutionSample> solve_weyl_left(const Potential& pot,
                                            const BoundaryCondition& alpha,
                                            const SpectralParameter& sp,
                                            const std::vector<double>& xs,
                                            const OdeOptions& opt = {});

/// Backward solve from x=R with psi(R) = sin(b), psi'(R) = -cos(b);
/// xs must lie in [0,R], ascending.
std::vector<SolutionSample> solve_weyl_right(const Potential& pot,
                                             const BoundaryCondition& beta, double R,
                                             const SpectralParameter& sp,
                                             const std::vector<double>& xs,
                                             const OdeOptions& opt = {});

struct JostResult {
    std::vector<SolutionSample> samples;
    double cutoff; // seeding point X with l1_tail(pot, X) <= tail_tol
};

/// Seeds psi = exp(iwX), psi' = iw exp(iwX) at a cutoff X with
/// l1_tail(pot,X) <= tail_tol and integrates backward to the grid.
JostResult solve_jost(const Potential& pot, const SpectralParameter& sp,
                      const std::vector<double>& xs, double tail_tol = 1e-10,
                      const OdeOptions& opt = {});

} // namespace ssflab

#endif
