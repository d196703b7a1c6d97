#include "ssflab/greens.hpp"

#include <algorithm>
#include <cmath>

#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {

// separation floor for kernels with a logarithmic diagonal singularity
constexpr double kDiagFloor = 1e-12;

void check_singular(Complex W, Complex a, Complex b) {
    double scale = std::max({std::abs(a) * std::abs(b), 1.0e-300});
    if (std::abs(W) < kWronskianThreshold * std::max(scale, 1.0))
        throw NearEigenvalueError("Wronskian below threshold: z too close to an eigenvalue");
}

// stable sinh(s*a) sinh(s*b) / sinh(s*c) for a,b,c >= 0, a + b <= c
double sinh_ratio(double s, double a, double b, double c) {
    double ea = -std::expm1(-2.0 * s * a);
    double eb = -std::expm1(-2.0 * s * b);
    double ec = -std::expm1(-2.0 * s * c);
    return 0.5 * std::exp(s * (a + b - c)) * ea * eb / ec;
}

} // namespace

Complex free_green_finite(const BoundaryCondition& alpha, const BoundaryCondition& beta,
                          double R, const SpectralParameter& sp, double x, double xp) {
    double mn = std::min(x, xp), mx = std::max(x, xp);
    auto l = free_solution(FreeKind::Left, alpha, R, sp, mn);
    auto r = free_solution(FreeKind::Right, beta, R, sp, mx);
    // W(psi_0a, psi_Rb) = -W(psi_Rb, psi_0a), Eq. of the free Wronskian
    Complex W = -free_wronskian_finite(alpha, beta, R, sp);
    check_singular(W, l.psi, r.psi);
    return -l.psi * r.psi / W;
}

Complex free_green_halfline(const BoundaryCondition& alpha, const SpectralParameter& sp,
                            double x, double xp) {
    double mn = std::min(x, xp), mx = std::max(x, xp);
    auto l = free_solution(FreeKind::Left, alpha, 0.0, sp, mn);
    auto j = free_solution(FreeKind::Jost, alpha, 0.0, sp, mx);
    Complex W = -free_wronskian_halfline(alpha, sp);
    check_singular(W, l.psi, j.psi);
    return -l.psi * j.psi / W;
}

Complex green_finite(const Potential& pot, const BoundaryCondition& alpha,
                     const BoundaryCondition& beta, double R,
                     const SpectralParameter& sp, double x, double xp,
                     const OdeOptions& opt) {
    if (x < 0 || xp < 0 || x > R || xp > R)
        throw DomainError("green_finite arguments outside [0,R]");
    double mn = std::min(x, xp), mx = std::max(x, xp);
    std::vector<double> grid = {mn, mx};
    auto left = solve_weyl_left(pot, alpha, sp, grid, opt);
    auto right = solve_weyl_right(pot, beta, R, sp, grid, opt);
    Complex W = wronskian(left[0], right[0]);
    check_singular(W, left[0].psi, right[0].psi);
    return -left[0].psi * right[1].psi / W;
}

Complex green_halfline(const Potential& pot, const BoundaryCondition& alpha,
                       const SpectralParameter& sp, double x, double xp,
                       double tail_tol, const OdeOptions& opt) {
    if (x < 0 || xp < 0) throw DomainError("green_halfline arguments must be nonnegative");
    double mn = std::min(x, xp), mx = std::max(x, xp);
    std::vector<double> grid = {mn, mx};
    auto left = solve_weyl_left(pot, alpha, sp, grid, opt);
    auto jost = solve_jost(pot, sp, grid, tail_tol, opt);
    Complex W = wronskian(left[0], jost.samples[0]);
    check_singular(W, left[0].psi, jost.samples[0].psi);
    return -left[0].psi * jost.samples[1].psi / W;
}

double krein_residual_interval(const Potential& pot, const BoundaryCondition& alpha,
                               const BoundaryCondition& beta, double R,
                               const SpectralParameter& sp, double x, double xp,
                               const OdeOptions& opt) {
    Complex lhs = green_finite(pot, alpha, beta, R, sp, x, xp, opt);
    Complex ghalf = green_halfline(pot, alpha, sp, x, xp, 1e-10, opt);

    std::vector<double> grid = {std::min(x, xp), std::max(x, xp), R};
    std::sort(grid.begin(), grid.end());
    auto left = solve_weyl_left(pot, alpha, sp, grid, opt);
    auto jost = solve_jost(pot, sp, grid, 1e-10, opt);

    auto at = [&](const std::vector<SolutionSample>& v, double pos) {
        for (const auto& s : v)
            if (s.x == pos) return s;
        throw DomainError("sample lookup failed");
    };
    auto psiR = at(jost.samples, R);
    auto p0R = at(left, R);
    Complex W = wronskian(at(left, grid[0]), at(jost.samples, grid[0]));

    Complex num = (beta.s() * psiR.dpsi + beta.c() * psiR.psi) * at(left, x).psi *
                  at(left, xp).psi;
    Complex den = (beta.s() * p0R.dpsi + beta.c() * p0R.psi) * W;
    check_singular(den, at(left, x).psi, at(left, xp).psi);
    Complex rhs = ghalf + num / den;
    return std::abs(lhs - rhs);
}

double krein_residual_halfline(const Potential& pot, const BoundaryCondition& alpha,
                               const BoundaryCondition& alpha_tilde,
                               const SpectralParameter& sp, double x, double xp,
                               const OdeOptions& opt) {
    Complex lhs = green_halfline(pot, alpha_tilde, sp, x, xp, 1e-10, opt);
    Complex g_alpha = green_halfline(pot, alpha, sp, x, xp, 1e-10, opt);
    if (alpha.angle == alpha_tilde.angle) return std::abs(lhs - g_alpha);

    std::vector<double> grid = {0.0, std::min(x, xp), std::max(x, xp)};
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    auto jost = solve_jost(pot, sp, grid, 1e-10, opt);

    auto at = [&](double pos) {
        for (const auto& s : jost.samples)
            if (s.x == pos) return s;
        throw DomainError("sample lookup failed");
    };
    auto j0 = at(0.0);
    // psi_{0,a}(0) = -sin a, psi'_{0,a}(0) = cos a exactly
    Complex bracket = Complex(alpha_tilde.s() * alpha.c() - alpha_tilde.c() * alpha.s(), 0.0);
    Complex W0 = Complex(-alpha.s(), 0.0) * j0.dpsi - Complex(alpha.c(), 0.0) * j0.psi;
    Complex den = W0 * (alpha_tilde.s() * j0.dpsi + alpha_tilde.c() * j0.psi);
    check_singular(den, at(x).psi, at(xp).psi);
    Complex rhs = g_alpha + bracket * at(x).psi * at(xp).psi / den;
    return std::abs(lhs - rhs);
}

double bessel_k0(double t) {
    if (t <= 0.0) throw DomainError("K0 requires positive argument");
    if (t < 1e-3) {
        // K0(t) = -(ln(t/2)+gamma) I0(t) + t^2/4 + O(t^4)
        constexpr double gamma = 0.57721566490153286;
        double i0 = 1.0 + 0.25 * t * t;
        return -(std::log(0.5 * t) + gamma) * i0 + 0.25 * t * t;
    }
    double U = std::acosh(1.0 + 46.0 / t);
    auto f = [t](double u) { return std::exp(-t * std::cosh(u)); };
    return integrate_adaptive(f, 0.0, U, 1e-14, 1e-12).value;
}

double frac_power_kernel(Geometry geom, double R, double E, double q, double x,
                         double xp) {
    if (E <= 0.0) throw DomainError("fractional power kernel requires E > 0");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0,1)");
    if (x < 0 || xp < 0) throw DomainError("kernel arguments must be nonnegative");
    if (geom == Geometry::Interval && (x > R || xp > R))
        throw DomainError("kernel arguments outside [0,R]");

    double mn = std::min(x, xp), mx = std::max(x, xp);
    double d = std::max(mx - mn, kDiagFloor);
    const double sE = std::sqrt(E);

    if (q == 0.5) {
        if (geom == Geometry::Halfline)
            return (bessel_k0(sE * d) - bessel_k0(sE * (x + xp))) / M_PI;
        // s = sqrt(E) cosh(t) removes the endpoint singularity
        double T = std::acosh(std::max(2.0, 46.0 / (sE * d)));
        auto f = [&](double t) {
            double s = sE * std::cosh(t);
            return sinh_ratio(s, mn, R - mn - d, R);
        };
        return 2.0 / M_PI * integrate_adaptive(f, 0.0, T, 1e-13, 1e-11).value;
    }

    // general q: (sin(pi q)/pi) int_0^inf t^{-q} G0(-E-t,x,x') dt,
    // substituting t = sigma^{1/(1-q)}
    const double p = 1.0 / (1.0 - q);
    double t_max = std::pow(46.0 / d, 2.0);
    double sigma_max = std::pow(t_max, 1.0 - q);
    auto f = [&](double sigma) {
        double t = std::pow(sigma, p);
        double kappa = std::sqrt(E + t);
        double G;
        if (geom == Geometry::Halfline) {
            // sinh(kappa mn) e^{-kappa mx} / kappa
            G = 0.5 * std::exp(-kappa * d) * (-std::expm1(-2.0 * kappa * mn)) / kappa;
        } else {
            G = sinh_ratio(kappa, mn, R - mn - d, R) / kappa;
        }
        return G;
    };
    double integral = p * integrate_adaptive(f, 0.0, sigma_max, 1e-13, 1e-11).value;
    return std::sin(M_PI * q) / M_PI * integral;
}

} // namespace ssflab
