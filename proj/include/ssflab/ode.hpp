#ifndef SSFLAB_ODE_HPP
#define SSFLAB_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ssflab/errors.hpp"

namespace ssflab {

struct OdeOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-13;
    double initial_step = 1e-3;
    double min_step = 1e-14;
};

// Dormand-Prince 5(4) coefficients.
namespace dopri {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
} // namespace dopri

/// Adaptive Dormand-Prince integration of y' = f(x, y) from x0 to x1
/// (either direction). State is a fixed-size array of a scalar type that
/// supports + and scalar*; std::abs must yield its magnitude.
template <typename Scalar, std::size_t N, typename Rhs>
std::array<Scalar, N> integrate_ode(Rhs&& f, double x0, double x1,
                                    std::array<Scalar, N> y,
                                    const OdeOptions& opt = {}) {
    if (x0 == x1) return y;
    const double dir = (x1 > x0) ? 1.0 : -1.0;
    double x = x0;
    double h = dir * std::min(opt.initial_step, std::abs(x1 - x0));

    auto norm = [](const std::array<Scalar, N>& v) {
        double m = 0;
        for (const auto& c : v) m = std::max(m, static_cast<double>(std::abs(c)));
        return m;
    };

    std::array<Scalar, N> k1, k2, k3, k4, k5, k6, k7, yt, y5;
    k1 = f(x, y);
    while (dir * (x1 - x) > 0) {
        if (dir * (x + h - x1) > 0) h = x1 - x;
        using namespace dopri;
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a21 * k1[i]);
        k2 = f(x + c2 * h, yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(x + c3 * h, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(x + c4 * h, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(x + c5 * h, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        k6 = f(x + h, yt);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);
        k7 = f(x + h, y5);

        double err = 0;
        const double scale_base = std::max(norm(y), norm(y5));
        for (std::size_t i = 0; i < N; ++i) {
            Scalar e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            double sc = opt.abs_tol + opt.rel_tol * scale_base;
            err = std::max(err, static_cast<double>(std::abs(e)) / sc);
        }

        if (err <= 1.0) {
            x += h;
            y = y5;
            k1 = k7; // FSAL
        }
        double factor = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (std::abs(h) < opt.min_step * std::max(1.0, std::abs(x)))
            throw IntegrationError("ODE step size underflow", x);
    }
    return y;
}

} // namespace ssflab

#endif
