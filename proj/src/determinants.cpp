#include "ssflab/determinants.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {

// smallest interval [0,X] whose complement carries an l1 mass below tol
double l1_cutoff(const Potential& pot, double tol) {
    if (tol <= 0.0) throw DomainError("tail tolerance must be positive");
    double X = 1.0;
    const double hint = pot.support_hint();
    if (std::isfinite(hint) && pot.l1_tail(hint) <= tol) {
        X = std::max(X, hint);
        while (X > 1.0 && pot.l1_tail(X - 1.0) <= tol) X -= 1.0;
        return X;
    }
    int guard = 0;
    while (pot.l1_tail(X) > tol) {
        X *= 1.5;
        if (++guard > 200)
            throw TailError("cannot certify l1 tail below tolerance");
    }
    return X;
}

// Exact integrals over a reference panel: with P_m the Legendre polynomials,
// J_m(a) = int_{-1}^{a} (a - s) P_m(s) ds, evaluated by the antiderivative
// recurrence int P_m = (P_{m+1} - P_{m-1}) / (2m + 1).
void legendre_values(double t, int n, std::vector<double>& P) {
    P.resize(n + 2);
    P[0] = 1.0;
    P[1] = t;
    for (int m = 1; m <= n; ++m)
        P[m + 1] = ((2 * m + 1) * t * P[m] - m * P[m - 1]) / (m + 1);
}

// Product-integration weights for the kink |t_j - s| / 2 against the Lagrange
// basis of an np-point Gauss-Legendre rule on [-1, 1].  The expansion
// l_k = sum_m (2m+1)/2 w_k P_m(t_k) P_m is exact because the rule integrates
// degree m + np - 1 <= 2 np - 1 without error.
void kink_weights(const std::vector<double>& t, const std::vector<double>& wq,
                  std::vector<std::vector<double>>& V) {
    const int np = static_cast<int>(t.size());
    std::vector<std::vector<double>> P(np), J(np, std::vector<double>(np));
    for (int k = 0; k < np; ++k) legendre_values(t[k], np, P[k]);
    std::vector<double> A(np + 1);
    for (int j = 0; j < np; ++j) {
        const double a = t[j];
        A[0] = a + 1.0;
        for (int m = 1; m <= np; ++m) A[m] = (P[j][m + 1] - P[j][m - 1]) / (2 * m + 1);
        for (int m = 0; m < np; ++m) {
            double B = (m == 0) ? 0.5 * (a * a - 1.0)
                                : ((m + 1) * A[m + 1] + m * A[m - 1]) / (2 * m + 1);
            J[j][m] = a * A[m] - B;
        }
    }
    V.assign(np, std::vector<double>(np));
    for (int j = 0; j < np; ++j)
        for (int k = 0; k < np; ++k) {
            double s = 0.0;
            for (int m = 0; m < np; ++m) s += (2 * m + 1) * P[k][m] * J[j][m];
            V[j][k] = 0.5 * wq[k] * ((t[k] - t[j]) + s);
        }
}

// Fredholm determinant of I + u G v on [0, b] by a corrected Nystrom rule.
// The Green kernel has a unit slope jump across the diagonal (G is locally a
// smooth part minus |x - y| / 2), which caps a plain tensor rule at O(h^2).
// Within each quadrature panel the kink part is integrated exactly against the
// panel's Lagrange basis instead; across panels |x - y| is polynomial and the
// plain weights are already exact.  The product weights deposit mass on the
// diagonal where the kink part actually vanishes, so the matrix trace drifts
// from the operator trace by the diagonal corrections; the determinant is
// rescaled by exp of that drift to restore it.
Complex nystrom_det(const Potential& pot, int n, double b,
                    const std::function<Complex(double, double)>& kernel) {
    if (n < 4) throw DomainError("Nystrom size must be at least 4");
    auto fac = factorize(pot);

    std::vector<double> edges = {0.0};
    for (double c : pot.breakpoints())
        if (c > 0.0 && c < b) edges.push_back(c);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::vector<double> xs, ws;
    gauss_legendre_panels(n, 0.0, b, pot.breakpoints(), xs, ws);
    const int m = static_cast<int>(xs.size());

    std::vector<double> uv(m), vv(m);
    for (int j = 0; j < m; ++j) {
        uv[j] = fac.u(xs[j]);
        vv[j] = fac.v(xs[j]);
    }
    Eigen::MatrixXcd M(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            M(j, k) = uv[j] * kernel(xs[j], xs[k]) * vv[k] * ws[k];

    Complex trace_shift(0.0, 0.0);
    const int npanels = static_cast<int>(edges.size()) - 1;
    int offset = 0;
    for (int p = 0; p < npanels; ++p) {
        // recover this panel's node count from the shared layout
        int np = 0;
        while (offset + np < m && xs[offset + np] < edges[p + 1]) ++np;
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        const double mid = 0.5 * (edges[p + 1] + edges[p]);
        std::vector<double> t(np), wq(np);
        for (int i = 0; i < np; ++i) {
            t[i] = (xs[offset + i] - mid) / half;
            wq[i] = ws[offset + i] / half;
        }
        std::vector<std::vector<double>> V;
        kink_weights(t, wq, V);
        for (int j = 0; j < np; ++j)
            for (int k = 0; k < np; ++k) {
                const int gj = offset + j, gk = offset + k;
                double fix = ws[gk] * 0.5 * std::abs(xs[gj] - xs[gk]) -
                             half * half * V[j][k];
                M(gj, gk) += uv[gj] * fix * vv[gk];
                if (gj == gk) trace_shift -= uv[gj] * fix * vv[gk];
            }
        offset += np;
    }

    M += Eigen::MatrixXcd::Identity(m, m);
    Complex det = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant();
    return det * std::exp(trace_shift);
}

double trace_norm_from_kernel(const Potential& pot, int n, double b,
                              const std::function<double(double, double)>& kernel) {
    auto fac = factorize(pot);
    std::vector<double> xs, ws;
    gauss_legendre_panels(n, 0.0, b, pot.breakpoints(), xs, ws);
    const int m = static_cast<int>(xs.size());

    Eigen::MatrixXd S(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k <= j; ++k) {
            double val = std::sqrt(ws[j]) * fac.v(xs[j]) * kernel(xs[j], xs[k]) *
                         fac.v(xs[k]) * std::sqrt(ws[k]);
            S(j, k) = val;
            S(k, j) = val;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

void check_free_denominator(Complex W) {
    if (std::abs(W) < kWronskianThreshold)
        throw NearEigenvalueError("z too close to an eigenvalue of the free operator");
}

} // namespace

Complex det_wronskian_finite(const Potential& pot, const BoundaryCondition& alpha,
                             const BoundaryCondition& beta, double R,
                             const SpectralParameter& sp, WronskianVariant variant,
                             const OdeOptions& opt) {
    if (R <= 0.0) throw DomainError("interval length must be positive");
    if (pot.is_zero()) return Complex(1.0, 0.0); // identically one, no transport needed
    Complex num;
    if (variant == WronskianVariant::AtRightEndpoint) {
        std::vector<double> grid = {R};
        auto left = solve_weyl_left(pot, alpha, sp, grid, opt);
        num = beta.s() * left[0].dpsi + beta.c() * left[0].psi;
    } else {
        std::vector<double> grid = {0.0};
        auto right = solve_weyl_right(pot, beta, R, sp, grid, opt);
        num = alpha.c() * right[0].psi + alpha.s() * right[0].dpsi;
    }
    Complex den = free_wronskian_finite(alpha, beta, R, sp);
    check_free_denominator(den);
    return num / den;
}

Complex det_wronskian_halfline(const Potential& pot, const BoundaryCondition& alpha,
                               const SpectralParameter& sp, double tail_tol,
                               const OdeOptions& opt) {
    if (pot.is_zero()) return Complex(1.0, 0.0);
    std::vector<double> grid = {0.0};
    auto jost = solve_jost(pot, sp, grid, tail_tol, opt);
    Complex num = alpha.s() * jost.samples[0].dpsi + alpha.c() * jost.samples[0].psi;
    Complex den = free_wronskian_halfline(alpha, sp);
    check_free_denominator(den);
    return num / den;
}

Complex det_nystrom_finite(const Potential& pot, const BoundaryCondition& alpha,
                           const BoundaryCondition& beta, double R,
                           const SpectralParameter& sp, int n) {
    if (R <= 0.0) throw DomainError("interval length must be positive");
    if (pot.is_zero()) return Complex(1.0, 0.0); // the matrix would be identically zero
    auto kernel = [&](double x, double xp) {
        return free_green_finite(alpha, beta, R, sp, x, xp);
    };
    return nystrom_det(pot, n, R, kernel);
}

Complex det_nystrom_halfline(const Potential& pot, const BoundaryCondition& alpha,
                             const SpectralParameter& sp, int n, double tail_tol) {
    if (pot.is_zero()) return Complex(1.0, 0.0);
    double b = l1_cutoff(pot, tail_tol);
    auto kernel = [&](double x, double xp) {
        return free_green_halfline(alpha, sp, x, xp);
    };
    return nystrom_det(pot, n, b, kernel);
}

double trace_norm_bs_finite(const Potential& pot, const BoundaryCondition& alpha,
                            const BoundaryCondition& beta, double R, double E, int n) {
    if (E <= 0.0) throw DomainError("trace norm point must lie below the spectrum");
    SpectralParameter sp(Complex(-E, 0.0));
    auto kernel = [&](double x, double xp) {
        return free_green_finite(alpha, beta, R, sp, x, xp).real();
    };
    return trace_norm_from_kernel(pot, n, R, kernel);
}

double trace_norm_bs_halfline(const Potential& pot, const BoundaryCondition& alpha,
                              double E, int n, double tail_tol) {
    if (E <= 0.0) throw DomainError("trace norm point must lie below the spectrum");
    SpectralParameter sp(Complex(-E, 0.0));
    double b = l1_cutoff(pot, tail_tol);
    auto kernel = [&](double x, double xp) {
        return free_green_halfline(alpha, sp, x, xp).real();
    };
    return trace_norm_from_kernel(pot, n, b, kernel);
}

} // namespace ssflab
