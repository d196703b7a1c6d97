#ifndef SSFLAB_SPECTRAL_HPP
#define SSFLAB_SPECTRAL_HPP

#include <cmath>
#include <complex>

#include "ssflab/errors.hpp"

namespace ssflab {

using Complex = std::complex<double>;

/// Complex energy z together with its branch root w = z^{1/2}, Im w >= 0.
struct SpectralParameter {
    Complex z;
    Complex w;

    explicit SpectralParameter(Complex z_) : z(z_) {
        if (z == Complex(0.0, 0.0)) throw BranchError("z = 0 has no admissible branch root");
        w = std::sqrt(z);
        if (w.imag() < 0.0) w = -w;
        // negative real axis: sqrt(-E + 0i) = i sqrt(E), already Im >= 0
    }
};

/// Separated self-adjoint boundary condition sin(a) psi' + cos(a) psi = 0.
/// angle = 0 is Dirichlet, pi/2 is Neumann.
struct BoundaryCondition {
    double angle;

    explicit BoundaryCondition(double a) : angle(a) {
        if (!(a >= 0.0 && a < M_PI))
            throw DomainError("boundary angle must lie in [0, pi)");
    }
    double s() const { return std::sin(angle); }
    double c() const { return std::cos(angle); }
    bool is_dirichlet() const { return angle == 0.0; }
};

/// (psi, psi') at a point.
struct SolutionSample {
    double x;
    Complex psi;
    Complex dpsi;
};

/// W(a,b) = a b' - a' b; requires a.x == b.x.
inline Complex wronskian(const SolutionSample& a, const SolutionSample& b) {
    if (a.x != b.x) throw DomainError("wronskian requires samples at the same x");
    return a.psi * b.dpsi - a.dpsi * b.psi;
}

} // namespace ssflab

#endif
