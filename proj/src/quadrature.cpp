#include "ssflab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "ssflab/errors.hpp"

namespace ssflab {

namespace {

// Gauss 7 / Kronrod 15 on [-1,1]
const double kron_x[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
const double kron_w[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double gauss_w[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        double fx = f(c + h * kron_x[i]);
        kron += kron_w[i] * fx;
        if (i % 2 == 1) gauss += gauss_w[i / 2] * fx;
    }
    kron *= h;
    gauss *= h;
    return Segment{a, b, kron, std::abs(kron - gauss)};
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, double rel_tol,
                              int max_subdivisions) {
    if (a == b) return {0.0, 0.0};
    std::priority_queue<Segment> segs;
    segs.push(gk15(f, a, b));
    double total = segs.top().value, err = segs.top().error;
    for (int it = 0; it < max_subdivisions; ++it) {
        if (err <= abs_tol || err <= rel_tol * std::abs(total)) return {total, err};
        Segment worst = segs.top();
        segs.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Segment l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        segs.push(l);
        segs.push(r);
    }
    if (err <= abs_tol || err <= rel_tol * std::abs(total)) return {total, err};
    throw AccuracyError("adaptive quadrature did not converge", total, err);
}

QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol, double rel_tol,
                                 int max_subdivisions) {
    auto g = [&](double t) {
        double x = a + t / (1.0 - t);
        double jac = 1.0 / ((1.0 - t) * (1.0 - t));
        return f(x) * jac;
    };
    return integrate_adaptive(g, 0.0, 1.0 - 1e-14, abs_tol, rel_tol, max_subdivisions);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on P_n, Chebyshev initial guess
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

void gauss_legendre_panels(int n, double a, double b,
                           const std::vector<double>& interior_breaks,
                           std::vector<double>& nodes, std::vector<double>& weights) {
    std::vector<double> edges = {a};
    for (double c : interior_breaks)
        if (c > a && c < b) edges.push_back(c);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    const int npanels = static_cast<int>(edges.size()) - 1;
    std::vector<int> counts(npanels);
    int assigned = 0;
    for (int p = 0; p < npanels; ++p) {
        counts[p] = std::max(4, static_cast<int>(std::lround(
                                    n * (edges[p + 1] - edges[p]) / (b - a))));
        assigned += counts[p];
    }
    // trim/grow the largest panel so the total stays n
    int largest = 0;
    for (int p = 1; p < npanels; ++p)
        if (counts[p] > counts[largest]) largest = p;
    counts[largest] = std::max(4, counts[largest] + (n - assigned));

    nodes.clear();
    weights.clear();
    std::vector<double> gx, gw;
    for (int p = 0; p < npanels; ++p) {
        gauss_legendre(counts[p], gx, gw);
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        double half = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < counts[p]; ++i) {
            nodes.push_back(mid + half * gx[i]);
            weights.push_back(half * gw[i]);
        }
    }
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
    double s = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        s += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    return s;
}

} // namespace ssflab
