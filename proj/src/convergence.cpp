#include "ssflab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "ssflab/parallel.hpp"
#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {

double smoothstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

// integral of xi(lambda) * w(lambda) over [a, b] subset of the grid, with
// linear interpolation of xi at the partial end cells
template <typename Weight>
double grid_integral(const SpectralShiftGrid& xi, double a, double b, Weight&& w) {
    const auto& ls = xi.lambdas;
    if (a >= b) throw DomainError("integration endpoints out of order");
    if (a < ls.front() - 1e-12 || b > ls.back() + 1e-12)
        throw DomainError("integration endpoints outside the lambda grid");
    a = std::max(a, ls.front());
    b = std::min(b, ls.back());

    auto f = [&](double l) { return xi.value_at(l) * w(l); };
    double total = 0.0;
    std::size_t j = static_cast<std::size_t>(
        std::upper_bound(ls.begin(), ls.end(), a) - ls.begin());
    double x = a, fx = f(a);
    for (; j < ls.size() && ls[j] < b; ++j) {
        double fn = f(ls[j]);
        total += 0.5 * (fx + fn) * (ls[j] - x);
        x = ls[j];
        fx = fn;
    }
    total += 0.5 * (fx + f(b)) * (b - x);
    return total;
}

} // namespace

TestFunction TestFunction::constant(double value) {
    TestFunction f;
    f.kind = Kind::Constant;
    f.p1 = value;
    return f;
}
TestFunction TestFunction::rational() {
    TestFunction f;
    f.kind = Kind::Rational;
    return f;
}
TestFunction TestFunction::gaussian(double center, double width) {
    if (width <= 0.0) throw DomainError("gaussian width must be positive");
    TestFunction f;
    f.kind = Kind::Gaussian;
    f.p1 = center;
    f.p2 = width;
    return f;
}
TestFunction TestFunction::sigmoid(double center, double width) {
    if (width <= 0.0) throw DomainError("sigmoid width must be positive");
    TestFunction f;
    f.kind = Kind::Sigmoid;
    f.p1 = center;
    f.p2 = width;
    return f;
}
TestFunction TestFunction::indicator(double e1, double e2) {
    if (e1 >= e2) throw DomainError("indicator endpoints out of order");
    TestFunction f;
    f.kind = Kind::Indicator;
    f.p1 = e1;
    f.p2 = e2;
    return f;
}
TestFunction TestFunction::mollified_indicator(double e1, double e2, double width) {
    if (e1 >= e2) throw DomainError("indicator endpoints out of order");
    if (width <= 0.0) throw DomainError("mollifier width must be positive");
    TestFunction f;
    f.kind = Kind::MollifiedIndicator;
    f.p1 = e1;
    f.p2 = e2;
    f.p3 = width;
    return f;
}

double TestFunction::operator()(double lambda) const {
    switch (kind) {
    case Kind::Constant: return p1;
    case Kind::Rational: return 1.0 / (1.0 + lambda * lambda);
    case Kind::Gaussian: {
        double t = (lambda - p1) / p2;
        return std::exp(-t * t);
    }
    case Kind::Sigmoid: return 1.0 / (1.0 + std::exp(-(lambda - p1) / p2));
    case Kind::Indicator: return (lambda >= p1 && lambda <= p2) ? 1.0 : 0.0;
    case Kind::MollifiedIndicator:
        return smoothstep((lambda - (p1 - p3)) / (2.0 * p3)) *
               smoothstep(((p2 + p3) - lambda) / (2.0 * p3));
    }
    throw DomainError("unknown test function kind");
}

double TestFunction::sup_abs() const {
    return kind == Kind::Constant ? std::abs(p1) : 1.0;
}

bool TestFunction::compact_support() const {
    return kind == Kind::Indicator || kind == Kind::MollifiedIndicator;
}

double TestFunction::support_left() const {
    if (!compact_support()) throw DomainError("test function has full support");
    return kind == Kind::Indicator ? p1 : p1 - p3;
}

double TestFunction::support_right() const {
    if (!compact_support()) throw DomainError("test function has full support");
    return kind == Kind::Indicator ? p2 : p2 + p3;
}

std::string TestFunction::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Constant: os << "constant(" << p1 << ")"; break;
    case Kind::Rational: os << "rational"; break;
    case Kind::Gaussian: os << "gaussian(center=" << p1 << ",width=" << p2 << ")"; break;
    case Kind::Sigmoid: os << "sigmoid(center=" << p1 << ",width=" << p2 << ")"; break;
    case Kind::Indicator: os << "indicator[" << p1 << "," << p2 << "]"; break;
    case Kind::MollifiedIndicator:
        os << "mollified_indicator[" << p1 << "," << p2 << "],width=" << p3;
        break;
    }
    return os.str();
}

std::vector<double> build_lambda_grid(const Potential& pot,
                                      const BoundaryCondition& alpha,
                                      double lambda_max, double coarse_step,
                                      double fine_step, double fine_radius,
                                      double tail_tol) {
    if (coarse_step <= 0.0 || fine_step <= 0.0 || fine_step > coarse_step)
        throw DomainError("grid steps must satisfy 0 < fine <= coarse");

    std::vector<double> centers = {0.0};
    double lowest = 0.0;
    if (!pot.is_zero()) {
        for (double b : halfline_bound_states(pot, alpha, tail_tol)) {
            centers.push_back(b);
            lowest = std::min(lowest, b);
        }
    }
    double start = std::min(-2.0, lowest - 1.0);

    std::vector<double> grid;
    double lam = start;
    grid.push_back(lam);
    while (lam < lambda_max) {
        double step = coarse_step;
        for (double c : centers)
            if (std::abs(lam - c) < fine_radius || std::abs(lam + step - c) < fine_radius)
                step = fine_step;
        lam = std::min(lam + step, lambda_max);
        grid.push_back(lam);
    }
    return grid;
}

WeightedIntegral weighted_integral(const SpectralShiftGrid& xi, const TestFunction& f,
                                   double tail_threshold) {
    const auto& ls = xi.lambdas;
    auto w = [&](double l) { return f(l) / (1.0 + l * l); };
    if (f.compact_support()) {
        if (f.support_left() < ls.front() || f.support_right() > ls.back())
            throw TailError("test function support extends beyond the lambda grid");
        return {grid_integral(xi, f.support_left(), f.support_right(), w), 0.0};
    }
    if (std::abs(xi.values.back()) > tail_threshold)
        throw TailError("grid end |xi| above the tail threshold; extend lambda_max");
    double value = grid_integral(xi, ls.front(), ls.back(), w);
    double tail = tail_threshold * f.sup_abs() * (M_PI / 2.0 - std::atan(ls.back()));
    return {value, tail};
}

Complex moment_integral(const SpectralShiftGrid& xi, Complex a, Complex z, int n) {
    if (n < 1) throw DomainError("moment power must be >= 1");
    const auto& ls = xi.lambdas;
    auto off_spectrum = [&](Complex c) {
        return c.imag() != 0.0 || c.real() < ls.front();
    };
    if (!off_spectrum(a) || !off_spectrum(z))
        throw DomainError("moment poles must be off the real grid range");
    auto re = [&](double l) {
        return (1.0 / ((l - a) * std::pow(Complex(l, 0.0) - z, n))).real();
    };
    auto im = [&](double l) {
        return (1.0 / ((l - a) * std::pow(Complex(l, 0.0) - z, n))).imag();
    };
    return {grid_integral(xi, ls.front(), ls.back(), re),
            grid_integral(xi, ls.front(), ls.back(), im)};
}

double interval_mass(const SpectralShiftGrid& xi, double e1, double e2) {
    return grid_integral(xi, e1, e2, [](double) { return 1.0; });
}

double weighted_mass_between(const SpectralShiftGrid& xi, double a, double b) {
    return grid_integral(xi, a, b, [](double l) { return 1.0 / (1.0 + l * l); });
}

double distribution_function(const SpectralShiftGrid& xi_pm, double lambda) {
    for (double v : xi_pm.values)
        if (v < -1e-9)
            throw DomainError("sign-split grid has negative values; not a valid xi_pm");
    const auto& ls = xi_pm.lambdas;
    if (lambda <= ls.front()) return 0.0;
    double top = std::min(lambda, ls.back());
    return grid_integral(xi_pm, ls.front(), top,
                         [](double l) { return 1.0 / (1.0 + l * l); });
}

ScanReport scan_infinite_volume(const Potential& pot, const BoundaryCondition& alpha,
                                const BoundaryCondition& beta,
                                const std::vector<TestFunction>& fs,
                                const std::vector<double>& R_list,
                                std::pair<double, double> sup_window,
                                const std::vector<std::pair<double, double>>& mass_windows,
                                int threads) {
    for (std::size_t i = 1; i < R_list.size(); ++i)
        if (R_list[i] <= R_list[i - 1])
            throw DomainError("R list must be strictly increasing");

    ScanReport rep;
    rep.R_values = R_list;
    rep.fs = fs;
    rep.mass_windows = mass_windows;
    rep.sup_window = sup_window;
    rep.lambda_grid = build_lambda_grid(pot, alpha);

    SpectralShiftGrid ref =
        xi_halfline_phase(pot, alpha, rep.lambda_grid, 1e-4, 1e-10, threads);
    rep.xi_ref = ref.values;
    for (const auto& f : fs) rep.ref_weighted.push_back(weighted_integral(ref, f).value);
    for (const auto& wdw : mass_windows)
        rep.ref_masses.push_back(interval_mass(ref, wdw.first, wdw.second));
    rep.det_ref =
        det_wronskian_halfline(pot, alpha, SpectralParameter(Complex(-1.0, 0.0))).real();

    // xi_R is a staircase jumping at the two eigenvalue ladders; integrals of
    // xi_R * g reduce to exact pair sums  sum_k int_{mu_k}^{nu_k} g,  which
    // avoids aliasing the O(1/R)-wide plateaus on the sampling grid
    const double lam_max = rep.lambda_grid.back();
    const double ladder_top = lam_max + 3.0 + pot.l1_norm();
    auto pair_sum = [&](const std::vector<double>& mu, const std::vector<double>& nu,
                        const std::function<double(double)>& g, double cut) {
        double total = 0.0;
        std::size_t K = std::min(mu.size(), nu.size());
        for (std::size_t k = 0; k < K; ++k) {
            double a = std::min(mu[k], cut), b = std::min(nu[k], cut);
            if (a == b) continue;
            total += integrate_adaptive(g, a, b, 1e-12, 1e-10).value;
        }
        return total;
    };

    for (double R : R_list) {
        ScanEntry entry;
        entry.R = R;
        try {
            std::vector<double> mu, nu;
            parallel_for(2, std::min(threads, 2), [&](std::size_t side) {
                if (side == 0)
                    mu = interval_eigenvalues(Potential::zero(), alpha, beta, R,
                                              ladder_top);
                else
                    nu = interval_eigenvalues(pot, alpha, beta, R, ladder_top);
            });

            SpectralShiftGrid xir;
            xir.lambdas = rep.lambda_grid;
            xir.values.resize(rep.lambda_grid.size());
            xir.method = XiMethod::Counting;
            xir.geometry = Geometry::Interval;
            xir.alpha = alpha.angle;
            xir.beta = beta.angle;
            xir.R = R;
            xir.anchor = rep.lambda_grid.front();
            for (std::size_t j = 0; j < rep.lambda_grid.size(); ++j) {
                double l = rep.lambda_grid[j];
                auto count = [&](const std::vector<double>& ladder) {
                    return std::upper_bound(ladder.begin(), ladder.end(), l) -
                           ladder.begin();
                };
                xir.values[j] = static_cast<double>(count(mu) - count(nu));
            }

            for (const auto& f : fs) {
                if (f.kind == TestFunction::Kind::Indicator) {
                    // sharp edges: clamp the pair intervals instead of
                    // integrating through the jump
                    double total = 0.0;
                    std::size_t K = std::min(mu.size(), nu.size());
                    for (std::size_t k = 0; k < K; ++k) {
                        double a = std::clamp(mu[k], f.p1, f.p2);
                        double b = std::clamp(nu[k], f.p1, f.p2);
                        if (a != b)
                            total += integrate_adaptive(
                                         [](double l) { return 1.0 / (1.0 + l * l); },
                                         a, b, 1e-12, 1e-10)
                                         .value;
                    }
                    entry.weighted.push_back(total);
                    continue;
                }
                double cut = f.compact_support() ? std::min(f.support_right(), lam_max)
                                                 : lam_max;
                entry.weighted.push_back(pair_sum(
                    mu, nu, [&](double l) { return f(l) / (1.0 + l * l); }, cut));
            }
            for (const auto& wdw : mass_windows) {
                double total = 0.0;
                std::size_t K = std::min(mu.size(), nu.size());
                for (std::size_t k = 0; k < K; ++k) {
                    double a = std::clamp(mu[k], wdw.first, wdw.second);
                    double b = std::clamp(nu[k], wdw.first, wdw.second);
                    total += b - a;
                }
                entry.masses.push_back(total);
            }
            double detR =
                det_wronskian_finite(pot, alpha, beta, R, SpectralParameter(Complex(-1.0, 0.0)))
                    .real();
            entry.det_gap = std::abs(detR - rep.det_ref);
            double sup = 0.0;
            for (std::size_t j = 0; j < rep.lambda_grid.size(); ++j) {
                double l = rep.lambda_grid[j];
                if (l < sup_window.first || l > sup_window.second) continue;
                sup = std::max(sup, std::abs(xir.values[j] - rep.xi_ref[j]));
            }
            entry.sup_gap = sup;
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

double cesaro_mean(const Potential& pot, const BoundaryCondition& alpha,
                   const BoundaryCondition& beta, double lambda, double R, int m,
                   int threads) {
    if (R <= 0.0 || m < 1) throw DomainError("cesaro mean needs R > 0 and m >= 1");
    if (std::abs(lambda) < 1e-3)
        throw DomainError("lambda = 0 is excluded from the Cesaro mean");
    for (double b : halfline_bound_states(pot, alpha))
        if (std::abs(lambda - b) < 1e-3)
            throw NearEigenvalueError(
                "lambda within the exclusion zone of a half-line bound state");

    std::vector<double> vals(m);
    parallel_for(m, threads, [&](std::size_t k) {
        double r = (k + 0.5) * R / m;
        int n0 = count_states(Potential::zero(), alpha, beta, r, lambda);
        int nv = count_states(pot, alpha, beta, r, lambda);
        vals[k] = static_cast<double>(n0 - nv);
    });
    double sum = 0.0;
    for (double v : vals) sum += v;
    return sum / m;
}

double rank_one_gap(int dim, int trials, std::uint64_t seed) {
    if (dim < 2) throw DomainError("dimension must be >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> cut(0, dim);

    double worst = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd f(dim), g(dim);
        for (int i = 0; i < dim; ++i) f(i) = normal(rng);
        for (int i = 0; i < dim; ++i) g(i) = normal(rng);
        int n = cut(rng);

        Eigen::VectorXd pf = f, pg = g;
        pf.tail(dim - n).setZero();
        pg.tail(dim - n).setZero();

        // D = g f^T - (Pg)(Pf)^T = A B^T with 2 columns; its nonzero
        // singular values are those of Ra Rb^T from the thin QR factors
        Eigen::MatrixXd A(dim, 2), B(dim, 2);
        A.col(0) = g;
        A.col(1) = -pg;
        B.col(0) = f;
        B.col(1) = pf;
        Eigen::HouseholderQR<Eigen::MatrixXd> qa(A), qb(B);
        Eigen::MatrixXd Ra = qa.matrixQR().topRows(2).triangularView<Eigen::Upper>();
        Eigen::MatrixXd Rb = qb.matrixQR().topRows(2).triangularView<Eigen::Upper>();
        Eigen::JacobiSVD<Eigen::Matrix2d> svd(Ra * Rb.transpose());
        double trace_norm = svd.singularValues().sum();

        double bound = (f - pf).norm() * g.norm() + pf.norm() * (g - pg).norm();
        worst = std::max(worst, trace_norm - bound);
    }
    return worst;
}

} // namespace ssflab
