#ifndef SSFLAB_POTENTIAL_HPP
#define SSFLAB_POTENTIAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssflab/errors.hpp"

namespace ssflab {

enum class PotentialKind { SquareWell, Exponential, GaussianBump, GridSampled, Zero };

enum class GridInterpolation { Linear, PiecewiseConstant };

/// Real-valued potential on [0,infty) with finite L^1 norm.
/// Immutable after construction; evaluation is pure.
class Potential {
public:
    // square well: V(x) = depth on (0,width), 0 beyond
    static Potential square_well(double depth, double width);
    // exponential: V(x) = amplitude * exp(-rate*x), rate > 0
    static Potential exponential(double amplitude, double rate);
    // gaussian bump: V(x) = height * exp(-((x-center)/width)^2)
    static Potential gaussian_bump(double height, double width, double center = 0.0);
    // sampled values on a strictly increasing grid; 0 outside [x.front(), x.back()]
    static Potential grid_sampled(std::vector<double> xs, std::vector<double> vs,
                                  GridInterpolation interp = GridInterpolation::Linear);
    static Potential zero();

    double evaluate(double x) const;

    // Cutoff beyond which |V| is machine-negligible, or +inf for slow decay
    // kinds where only l1_tail decay is known in closed form.
    double support_hint() const { return support_hint_; }

    // integral of |V| over (a, infty)
    double l1_tail(double a) const;
    double l1_norm() const { return l1_tail(0.0); }

    // x-positions where V or V' jumps; ODE steppers break here
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    PotentialKind kind() const { return kind_; }
    bool is_zero() const;

    // V restricted to (0,R), zero beyond
    Potential truncated(double R) const;
    // positive / negative parts: V = plus - minus, both >= 0
    Potential positive_part() const;
    Potential negative_part() const;
    // potential x -> V(x + x0) for x >= 0 (used by the Dirichlet splitting)
    Potential shifted(double x0) const;

    std::string describe() const;

private:
    Potential() = default;
    double evaluate_base(double x) const;

    PotentialKind kind_ = PotentialKind::Zero;
    double p1_ = 0.0;   // depth / amplitude / height
    double p2_ = 1.0;   // width / rate
    double center_ = 0.0;
    std::vector<double> grid_x_, grid_v_;
    GridInterpolation interp_ = GridInterpolation::Linear;

    // transformations applied on top of the base model
    double shift_ = 0.0;            // evaluate_base(x + shift_)
    double cutoff_ = -1.0;          // if >= 0: zero beyond cutoff_
    int sign_filter_ = 0;           // 0: none, +1: max(V,0), -1: max(-V,0)

    double support_hint_ = 0.0;
    std::vector<double> breakpoints_;

    void finalize();
};

/// V = u*v with v = |V|^{1/2} >= 0, u = v*sgn(V), sgn(0) := +1.
struct Factorization {
    std::function<double(double)> u;
    std::function<double(double)> v;
};

Factorization factorize(const Potential& pot);

struct TruncateSplitResult {
    Potential restricted;   // V_R
    Potential plus;         // V_+
    Potential minus;        // V_-
};

TruncateSplitResult truncate_and_split(const Potential& pot, double R);

} // namespace ssflab

#endif
