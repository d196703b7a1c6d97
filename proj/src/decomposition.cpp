#include "ssflab/decomposition.hpp"

#include <cmath>

#include "ssflab/greens.hpp"
#include "ssflab/parallel.hpp"

namespace ssflab {

SpectralShiftGrid xi_direct_sum(const Potential& pot, const SplitGeometry& split,
                                const std::vector<double>& lambdas, int threads) {
    BoundaryCondition dir(0.0);
    SpectralShiftGrid left = xi_finite(pot, dir, dir, split.R1, lambdas, threads);
    SpectralShiftGrid right = xi_finite(pot.shifted(split.R1), dir, dir,
                                        split.R2 - split.R1, lambdas, threads);
    for (std::size_t i = 0; i < left.values.size(); ++i)
        left.values[i] += right.values[i];
    left.R = split.R2;
    return left;
}

SpectralShiftGrid xi_split_correction(const Potential& pot, const SplitGeometry& split,
                                      const std::vector<double>& lambdas, int threads) {
    BoundaryCondition dir(0.0);
    SpectralShiftGrid full = xi_finite(pot, dir, dir, split.R2, lambdas, threads);
    SpectralShiftGrid dec = xi_direct_sum(pot, split, lambdas, threads);
    for (std::size_t i = 0; i < full.values.size(); ++i)
        full.values[i] -= dec.values[i];
    return full;
}

double krein_split_residual(const Potential& pot, const SplitGeometry& split,
                            const SpectralParameter& sp, double x, double xp,
                            const OdeOptions& opt) {
    BoundaryCondition dir(0.0);
    const double R1 = split.R1, R2 = split.R2;
    if (x < 0 || xp < 0 || x > R2 || xp > R2)
        throw DomainError("evaluation points must lie in [0,R2]");

    auto full = [&](double a, double b) {
        return green_finite(pot, dir, dir, R2, sp, a, b, opt);
    };
    Complex rhs = full(x, xp) - full(x, R1) * full(R1, xp) / full(R1, R1);

    Complex lhs(0.0, 0.0);
    const bool x_left = x <= R1, xp_left = xp <= R1;
    if (x_left && xp_left)
        lhs = green_finite(pot, dir, dir, R1, sp, x, xp, opt);
    else if (!x_left && !xp_left)
        lhs = green_finite(pot.shifted(R1), dir, dir, R2 - R1, sp, x - R1, xp - R1, opt);
    // opposite sides: the decoupled kernel vanishes
    return std::abs(lhs - rhs);
}

SpectralShiftGrid split_phase_correction(const Potential& pot, const SplitGeometry& split,
                                         const std::vector<double>& lambdas,
                                         double eps_scale, int threads) {
    BoundaryCondition dir(0.0);
    Potential zero = Potential::zero();
    auto sfun = [&](double lambda) -> Complex {
        double eps = eps_scale * (1.0 + std::abs(lambda));
        SpectralParameter sp(Complex(lambda, eps));
        Complex gv = green_finite(pot, dir, dir, split.R2, sp, split.R1, split.R1);
        Complex g0 = green_finite(zero, dir, dir, split.R2, sp, split.R1, split.R1);
        return gv / g0;
    };

    const std::size_t m = lambdas.size();
    std::vector<Complex> vals(m);
    parallel_for(m, threads, [&](std::size_t i) { vals[i] = sfun(lambdas[i]); });
    std::vector<double> phases = unwrap_phase(sfun, lambdas, vals);

    SpectralShiftGrid g;
    g.lambdas = lambdas;
    g.values.resize(m);
    g.method = XiMethod::Phase;
    g.geometry = Geometry::Interval;
    g.R = split.R2;
    g.epsilon_scale = eps_scale;
    g.anchor = lambdas.front();
    // decoupling removes states, so the correction carries the opposite
    // orientation to the diagonal-kernel phase
    for (std::size_t i = 0; i < m; ++i)
        g.values[i] = -(phases[i] - phases[0]) / M_PI;
    return g;
}

} // namespace ssflab
