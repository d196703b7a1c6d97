#include "ssflab/ssf.hpp"

#include <algorithm>
#include <cmath>

#include "ssflab/parallel.hpp"
#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {

void check_sorted(const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw DomainError("empty lambda grid");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (lambdas[i] <= lambdas[i - 1])
            throw DomainError("lambda grid must be strictly increasing");
}

double unwrap_segment(const std::function<Complex(double)>& f, double la, Complex da,
                      double phase_a, double lb, Complex db, int depth, int max_depth) {
    double inc = std::arg(db / da);
    if (std::abs(inc) < M_PI / 2.0) return phase_a + inc;
    if (depth >= max_depth)
        throw GridRefinementError("phase jump >= pi/2 persists at maximum bisection depth");
    double lm = 0.5 * (la + lb);
    Complex dm = f(lm);
    double pm = unwrap_segment(f, la, da, phase_a, lm, dm, depth + 1, max_depth);
    return unwrap_segment(f, lm, dm, pm, lb, db, depth + 1, max_depth);
}

} // namespace

double SpectralShiftGrid::value_at(double lambda) const {
    if (lambdas.empty()) throw DomainError("empty grid");
    if (lambda <= lambdas.front()) return values.front();
    if (lambda >= lambdas.back()) return values.back();
    auto it = std::upper_bound(lambdas.begin(), lambdas.end(), lambda);
    std::size_t j = static_cast<std::size_t>(it - lambdas.begin());
    double t = (lambda - lambdas[j - 1]) / (lambdas[j] - lambdas[j - 1]);
    return values[j - 1] + t * (values[j] - values[j - 1]);
}

std::vector<double> unwrap_phase(const std::function<Complex(double)>& f,
                                 const std::vector<double>& lambdas,
                                 const std::vector<Complex>& values, int max_depth) {
    std::vector<double> phases(lambdas.size());
    phases[0] = std::arg(values[0]);
    for (std::size_t j = 1; j < lambdas.size(); ++j)
        phases[j] = unwrap_segment(f, lambdas[j - 1], values[j - 1], phases[j - 1],
                                   lambdas[j], values[j], 0, max_depth);
    return phases;
}

int count_states(const Potential& pot, const BoundaryCondition& alpha,
                 const BoundaryCondition& beta, double R, double lambda,
                 const OdeOptions& opt) {
    if (R <= 0.0) throw DomainError("interval length must be positive");

    auto rhs = [&](double x, const std::array<double, 1>& th) -> std::array<double, 1> {
        double s = std::sin(th[0]), c = std::cos(th[0]);
        return {c * c + (lambda - pot.evaluate(x)) * s * s};
    };

    // theta(0) = pi - alpha; breakpoints of V are forced stops
    std::array<double, 1> th{M_PI - alpha.angle};
    double x = 0.0;
    std::vector<double> stops;
    for (double b : pot.breakpoints())
        if (b > 0.0 && b < R) stops.push_back(b);
    std::sort(stops.begin(), stops.end());
    stops.push_back(R);
    for (double s : stops) {
        if (s <= x) continue;
        th = integrate_ode(rhs, x, s, th, opt);
        x = s;
    }

    // eigenvalue targets: gamma + n*pi with gamma = pi - beta; the lowest
    // admissible target index depends on whether theta starts at pi
    // (Dirichlet at 0, theta cannot drop below pi) or inside (0, pi).
    const double gamma = M_PI - beta.angle;
    double t = (th[0] - gamma) / M_PI + 1e-9; // closed counting
    long n = static_cast<long>(std::floor(t));
    if (!alpha.is_dirichlet()) n += 1;
    return static_cast<int>(std::max(0L, n));
}

namespace {

// Prufer angle at x=R together with its derivative in lambda
std::pair<double, double> prufer_terminal(const Potential& pot,
                                          const BoundaryCondition& alpha, double R,
                                          double lambda, const OdeOptions& opt) {
    auto rhs = [&](double x, const std::array<double, 2>& y) -> std::array<double, 2> {
        double s = std::sin(y[0]), c = std::cos(y[0]);
        double v = pot.evaluate(x);
        return {c * c + (lambda - v) * s * s,
                std::sin(2.0 * y[0]) * (lambda - v - 1.0) * y[1] + s * s};
    };
    std::array<double, 2> y{M_PI - alpha.angle, 0.0};
    double x = 0.0;
    std::vector<double> stops;
    for (double b : pot.breakpoints())
        if (b > 0.0 && b < R) stops.push_back(b);
    std::sort(stops.begin(), stops.end());
    stops.push_back(R);
    for (double s : stops) {
        if (s <= x) continue;
        y = integrate_ode(rhs, x, s, y, opt);
        x = s;
    }
    return {y[0], y[1]};
}

} // namespace

std::vector<double> interval_eigenvalues(const Potential& pot,
                                         const BoundaryCondition& alpha,
                                         const BoundaryCondition& beta, double R,
                                         double lambda_max, const OdeOptions& opt) {
    if (R <= 0.0) throw DomainError("interval length must be positive");
    const double gamma = M_PI - beta.angle;
    // admissible targets gamma + n*pi: n >= 1 when theta starts at pi
    int n = alpha.is_dirichlet() ? 1 : 0;

    auto theta = [&](double lambda) { return prufer_terminal(pot, alpha, R, lambda, opt); };

    std::vector<double> eigs;
    double lam = -(pot.l1_norm() + 1.0) * (pot.l1_norm() + 1.0) - 1.0;
    for (;; ++n) {
        double target = gamma + n * M_PI;
        // bracket: previous eigenvalue (theta < target there by monotonicity
        // of the ladder) up to a point with theta >= target
        double lo = lam;
        auto [th_lo, eta_lo] = theta(lo);
        if (th_lo >= target) throw DomainError("eigenvalue ladder lost monotonicity");
        double step = eta_lo > 1e-12 ? M_PI / eta_lo : 1.0;
        double hi = lo + step;
        double th_hi, eta_hi;
        for (int guard = 0;; ++guard) {
            std::tie(th_hi, eta_hi) = theta(hi);
            if (th_hi >= target) break;
            lo = hi;
            th_lo = th_hi;
            hi += (eta_hi > 1e-12) ? std::max(step, (target - th_hi) / eta_hi) : step;
            if (guard > 500) throw DomainError("eigenvalue bracketing failed");
        }
        if (lo > lambda_max) break;
        // safeguarded Newton inside [lo, hi]
        double x = 0.5 * (lo + hi), th, eta;
        for (int it = 0; it < 60; ++it) {
            std::tie(th, eta) = theta(x);
            if (th >= target)
                hi = x;
            else
                lo = x;
            double dx = eta > 1e-300 ? (target - th) / eta : 0.0;
            double xn = x + dx;
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            if (std::abs(xn - x) < 1e-12 * (1.0 + std::abs(x))) {
                x = xn;
                break;
            }
            x = xn;
        }
        if (x > lambda_max) break;
        eigs.push_back(x);
        lam = x;
    }
    return eigs;
}

SpectralShiftGrid xi_finite_pair(const Potential& pot, const Potential& ref,
                                 const BoundaryCondition& alpha,
                                 const BoundaryCondition& beta, double R,
                                 const std::vector<double>& lambdas, int threads) {
    check_sorted(lambdas);
    SpectralShiftGrid g;
    g.lambdas = lambdas;
    g.values.resize(lambdas.size());
    g.method = XiMethod::Counting;
    g.geometry = Geometry::Interval;
    g.alpha = alpha.angle;
    g.beta = beta.angle;
    g.R = R;
    g.anchor = lambdas.front();
    parallel_for(lambdas.size(), threads, [&](std::size_t i) {
        int n_ref = count_states(ref, alpha, beta, R, lambdas[i]);
        int n_pot = count_states(pot, alpha, beta, R, lambdas[i]);
        g.values[i] = static_cast<double>(n_ref - n_pot);
    });
    return g;
}

SpectralShiftGrid xi_finite(const Potential& pot, const BoundaryCondition& alpha,
                            const BoundaryCondition& beta, double R,
                            const std::vector<double>& lambdas, int threads) {
    return xi_finite_pair(pot, Potential::zero(), alpha, beta, R, lambdas, threads);
}

SpectralShiftGrid xi_halfline_phase_pair(const Potential& pot, const Potential& ref,
                                         const BoundaryCondition& alpha,
                                         const std::vector<double>& lambdas,
                                         double eps_scale, double tail_tol,
                                         int threads) {
    check_sorted(lambdas);
    if (eps_scale <= 0.0) throw DomainError("epsilon scale must be positive");
    const bool trivial_ref = ref.is_zero();

    auto detfun = [&](double lambda, double scale) -> Complex {
        double eps = scale * (1.0 + std::abs(lambda));
        SpectralParameter sp(Complex(lambda, eps));
        Complex d = det_wronskian_halfline(pot, alpha, sp, tail_tol);
        if (!trivial_ref) d /= det_wronskian_halfline(ref, alpha, sp, tail_tol);
        return d;
    };

    const std::size_t m = lambdas.size();
    std::vector<Complex> d1(m), d2(m);
    parallel_for(m, threads, [&](std::size_t i) {
        d1[i] = detfun(lambdas[i], eps_scale);
        d2[i] = detfun(lambdas[i], eps_scale / 2.0);
    });
    auto f1 = [&](double l) { return detfun(l, eps_scale); };
    auto f2 = [&](double l) { return detfun(l, eps_scale / 2.0); };
    std::vector<double> p1 = unwrap_phase(f1, lambdas, d1);
    std::vector<double> p2 = unwrap_phase(f2, lambdas, d2);

    SpectralShiftGrid g;
    g.lambdas = lambdas;
    g.values.resize(m);
    g.method = XiMethod::Phase;
    g.geometry = Geometry::Halfline;
    g.alpha = alpha.angle;
    g.epsilon_scale = eps_scale;
    g.anchor = lambdas.front();
    // Richardson extrapolation eps -> 0, pinned to 0 at the anchor
    double base = (2.0 * p2[0] - p1[0]) / M_PI;
    for (std::size_t i = 0; i < m; ++i)
        g.values[i] = (2.0 * p2[i] - p1[i]) / M_PI - base;
    return g;
}

SpectralShiftGrid xi_halfline_phase(const Potential& pot, const BoundaryCondition& alpha,
                                    const std::vector<double>& lambdas,
                                    double eps_scale, double tail_tol, int threads) {
    return xi_halfline_phase_pair(pot, Potential::zero(), alpha, lambdas, eps_scale,
                                  tail_tol, threads);
}

SignSplit xi_sign_split(const Potential& pot, Geometry geom,
                        const BoundaryCondition& alpha, const BoundaryCondition& beta,
                        double R, const std::vector<double>& lambdas, int threads) {
    Potential vplus = pot.positive_part();
    SignSplit out;
    if (geom == Geometry::Interval) {
        // xi_plus = N0 - N(V+), xi_minus = N(V) - N(V+), both >= 0
        out.plus = xi_finite(vplus, alpha, beta, R, lambdas, threads);
        out.minus = xi_finite_pair(vplus, pot, alpha, beta, R, lambdas, threads);
    } else {
        out.plus = xi_halfline_phase(vplus, alpha, lambdas, 1e-4, 1e-10, threads);
        // xi_minus = -xi(.; H, H0+V+)
        out.minus = xi_halfline_phase_pair(pot, vplus, alpha, lambdas, 1e-4, 1e-10,
                                           threads);
        for (double& v : out.minus.values) v = -v;
    }
    return out;
}

std::vector<double> halfline_bound_states(const Potential& pot,
                                          const BoundaryCondition& alpha,
                                          double tail_tol) {
    // kappa of a bound state -kappa^2 is bounded by the L1 norm plus the
    // boundary-term contribution for Robin angles
    double kappa_max = pot.l1_norm() + 1.0;
    if (alpha.s() != 0.0) kappa_max += std::abs(alpha.c() / alpha.s());
    const double lo = -kappa_max * kappa_max - 0.5, hi = -1e-6;

    auto det_real = [&](double lambda) {
        return det_wronskian_halfline(pot, alpha, SpectralParameter(Complex(lambda, 0.0)),
                                      tail_tol)
            .real();
    };

    std::vector<double> roots;
    const int nsteps = 800;
    double step = (hi - lo) / nsteps;
    double xa = lo, fa = det_real(xa);
    for (int i = 1; i <= nsteps; ++i) {
        double xb = lo + i * step, fb = det_real(xb);
        if (fa == 0.0) roots.push_back(xa);
        if (fa * fb < 0.0) {
            double a = xa, b = xb, va = fa;
            for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
                double mid = 0.5 * (a + b), vm = det_real(mid);
                if (va * vm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    va = vm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    return roots;
}

namespace {

double trace_formula_residual_impl(const std::function<Complex(Complex)>& detfun,
                                   Complex z, const SpectralShiftGrid& xi, int n,
                                   double radius) {
    if (n < 1) throw DomainError("derivative order must be >= 1");
    if (radius <= 0.0) throw DomainError("contour radius must be positive");

    // LHS: n-th derivative of ln det by the Cauchy integral on a circle,
    // trapezoid in the angle (spectrally accurate), branch tracked around
    // the contour
    const int m = 64;
    std::vector<Complex> logs(m);
    Complex prev = detfun(z + radius);
    logs[0] = std::log(prev);
    for (int k = 1; k < m; ++k) {
        double th = 2.0 * M_PI * k / m;
        Complex d = detfun(z + radius * std::exp(Complex(0.0, th)));
        logs[k] = logs[k - 1] + std::log(d / prev);
        prev = d;
    }
    Complex coeff(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
        double th = 2.0 * M_PI * k / m;
        coeff += logs[k] * std::exp(Complex(0.0, -n * th));
    }
    coeff /= static_cast<double>(m);
    double nfact = 1.0;
    for (int k = 2; k <= n; ++k) nfact *= k;
    Complex lhs = nfact * coeff / std::pow(radius, n);

    // RHS: n! * int xi / (lambda - z)^{n+1} over the grid
    const auto& ls = xi.lambdas;
    const auto& vs = xi.values;
    if (std::abs(vs.back()) > 0.02)
        throw TailError("xi grid too short: |xi| above 0.02 at the last grid point");
    Complex integral(0.0, 0.0);
    for (std::size_t j = 1; j < ls.size(); ++j) {
        Complex fa = vs[j - 1] / std::pow(Complex(ls[j - 1], 0.0) - z, n + 1);
        Complex fb = vs[j] / std::pow(Complex(ls[j], 0.0) - z, n + 1);
        integral += 0.5 * (fa + fb) * (ls[j] - ls[j - 1]);
    }
    // past the grid end the phase decays like lambda^{-1/2}; integrate the
    // model xi_end * sqrt(L/lambda) analytically in lambda via quadrature
    const double L = ls.back();
    auto tail_part = [&](bool imag_part) {
        auto f = [&](double lambda) {
            Complex val = vs.back() * std::sqrt(L / lambda) /
                          std::pow(Complex(lambda, 0.0) - z, n + 1);
            return imag_part ? val.imag() : val.real();
        };
        return integrate_to_infinity(f, L, 1e-12, 1e-9).value;
    };
    integral += Complex(tail_part(false), tail_part(true));
    Complex rhs = nfact * integral;

    double denom = std::abs(rhs);
    double resid = std::abs(lhs - rhs);
    return denom > 1e-14 ? resid / denom : resid;
}

} // namespace

double trace_formula_residual_halfline(const Potential& pot,
                                       const BoundaryCondition& alpha, Complex z,
                                       const SpectralShiftGrid& xi, int n,
                                       double contour_radius) {
    auto detfun = [&](Complex zz) {
        return det_wronskian_halfline(pot, alpha, SpectralParameter(zz));
    };
    return trace_formula_residual_impl(detfun, z, xi, n, contour_radius);
}

double trace_formula_residual_finite(const Potential& pot,
                                     const BoundaryCondition& alpha,
                                     const BoundaryCondition& beta, double R,
                                     Complex z, const SpectralShiftGrid& xi, int n,
                                     double contour_radius) {
    auto detfun = [&](Complex zz) {
        return det_wronskian_finite(pot, alpha, beta, R, SpectralParameter(zz));
    };
    return trace_formula_residual_impl(detfun, z, xi, n, contour_radius);
}

} // namespace ssflab
