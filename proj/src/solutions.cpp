#include "ssflab/solutions.hpp"

#include <algorithm>
#include <cmath>

namespace ssflab {

namespace {

// sin(wx)/w, stable at small |wx| through the series of std::sin
Complex sinc_w(Complex w, double x) { return std::sin(w * x) / w; }

using State = std::array<Complex, 2>; // (psi, psi')

// Integrate through [x0, x1] honoring potential breakpoints, collecting
// samples at the grid points inside the sweep direction.
std::vector<SolutionSample> sweep(const Potential& pot, const SpectralParameter& sp,
                                  double x0, double x1, State y,
                                  const std::vector<double>& xs,
                                  const OdeOptions& opt) {
    auto rhs = [&](double x, const State& s) -> State {
        Complex vz = Complex(pot.evaluate(x), 0.0) - sp.z;
        return State{s[1], vz * s[0]};
    };

    const bool forward = x1 >= x0;
    // stop points: requested grid plus potential breakpoints, ordered along
    // the sweep
    std::vector<double> stops = xs;
    for (double b : pot.breakpoints())
        if (b > std::min(x0, x1) && b < std::max(x0, x1)) stops.push_back(b);
    stops.push_back(x1);
    if (forward)
        std::sort(stops.begin(), stops.end());
    else
        std::sort(stops.begin(), stops.end(), std::greater<>());

    std::vector<SolutionSample> hit;
    hit.reserve(xs.size() + 1);
    double x = x0;
    auto want = [&](double s) {
        return std::binary_search(xs.begin(), xs.end(), s);
    };
    if (want(x0)) hit.push_back({x0, y[0], y[1]});

    for (double s : stops) {
        if (forward ? (s <= x) : (s >= x)) continue;
        y = integrate_ode(rhs, x, s, y, opt);
        x = s;
        if (want(s) && (hit.empty() || hit.back().x != s))
            hit.push_back({s, y[0], y[1]});
    }
    if (!forward) std::reverse(hit.begin(), hit.end());

    // one output entry per requested grid point (duplicates included)
    std::vector<SolutionSample> out;
    out.reserve(xs.size());
    std::size_t j = 0;
    for (double s : xs) {
        while (j + 1 < hit.size() && hit[j].x != s) ++j;
        out.push_back(hit[j]);
    }
    return out;
}

void check_grid(const std::vector<double>& xs) {
    if (xs.empty()) throw DomainError("empty evaluation grid");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 0.0) throw DomainError("grid points must be nonnegative");
        if (i > 0 && xs[i] < xs[i - 1]) throw DomainError("grid must be ascending");
    }
}

} // namespace

SolutionSample free_solution(FreeKind which, const BoundaryCondition& bc, double R,
                             const SpectralParameter& sp, double x) {
    const Complex w = sp.w;
    switch (which) {
    case FreeKind::Left: {
        Complex psi = bc.c() * sinc_w(w, x) - bc.s() * std::cos(w * x);
        Complex dpsi = bc.c() * std::cos(w * x) + bc.s() * w * std::sin(w * x);
        return {x, psi, dpsi};
    }
    case FreeKind::Right: {
        double t = R - x;
        Complex psi = bc.c() * sinc_w(w, t) + bc.s() * std::cos(w * t);
        Complex dpsi = -bc.c() * std::cos(w * t) + bc.s() * w * std::sin(w * t);
        return {x, psi, dpsi};
    }
    case FreeKind::Jost: {
        Complex e = std::exp(Complex(0, 1) * w * x);
        return {x, e, Complex(0, 1) * w * e};
    }
    }
    throw DomainError("unknown free solution kind");
}

Complex free_wronskian_finite(const BoundaryCondition& alpha, const BoundaryCondition& beta,
                              double R, const SpectralParameter& sp) {
    const Complex w = sp.w;
    return std::sin(beta.angle - alpha.angle) * std::cos(w * R) +
           alpha.s() * beta.s() * w * std::sin(w * R) +
           alpha.c() * beta.c() * sinc_w(w, R);
}

Complex free_wronskian_halfline(const BoundaryCondition& alpha, const SpectralParameter& sp) {
    return Complex(alpha.c(), 0.0) + Complex(0, 1) * sp.w * alpha.s();
}

std::vector<SolutionSample> solve_weyl_left(const Potential& pot,
                                            const BoundaryCondition& alpha,
                                            const SpectralParameter& sp,
                                            const std::vector<double>& xs,
                                            const OdeOptions& opt) {
    check_grid(xs);
    State y{Complex(-alpha.s(), 0.0), Complex(alpha.c(), 0.0)};
    return sweep(pot, sp, 0.0, xs.back(), y, xs, opt);
}

std::vector<SolutionSample> solve_weyl_right(const Potential& pot,
                                             const BoundaryCondition& beta, double R,
                                             const SpectralParameter& sp,
                                             const std::vector<double>& xs,
                                             const OdeOptions& opt) {
    check_grid(xs);
    if (xs.back() > R) throw DomainError("right solve grid exceeds R");
    State y{Complex(beta.s(), 0.0), Complex(-beta.c(), 0.0)};
    return sweep(pot, sp, R, xs.front(), y, xs, opt);
}

JostResult solve_jost(const Potential& pot, const SpectralParameter& sp,
                      const std::vector<double>& xs, double tail_tol,
                      const OdeOptions& opt) {
    check_grid(xs);
    if (tail_tol <= 0.0) throw DomainError("tail_tol must be positive");

    double X = std::max(xs.back(), 1.0);
    const double hint = pot.support_hint();
    if (std::isfinite(hint) && pot.l1_tail(hint) <= tail_tol) {
        X = std::max(X, hint);
        // pull the cutoff in as far as the tolerance allows
        while (X > xs.back() + 1.0 && pot.l1_tail(X - 1.0) <= tail_tol) X -= 1.0;
    } else {
        int guard = 0;
        while (pot.l1_tail(X) > tail_tol) {
            X *= 1.5;
            if (++guard > 200)
                throw TailError("cannot certify l1 tail below tolerance; "
                                "potential needs a support hint");
        }
    }

    // Integrate the unit-normalized solution e^{i w (x - X)} and rescale at the
    // end.  Seeding with e^{i w X} directly would start the sweep far below the
    // absolute error tolerance for Im w large, and the absolute error committed
    // there rides the backward-growing mode, amplified by e^{|Im w| X}.
    State y{Complex(1.0, 0.0), Complex(0.0, 1.0) * sp.w};
    auto samples = sweep(pot, sp, X, xs.front(), y, xs, opt);
    const Complex scale = std::exp(Complex(0.0, 1.0) * sp.w * X);
    for (auto& s : samples) {
        s.psi *= scale;
        s.dpsi *= scale;
    }
    return {std::move(samples), X};
}

} // namespace ssflab
