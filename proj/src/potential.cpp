#include "ssflab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// |V| below height * kNegligible counts as machine-negligible
constexpr double kNegligible = 1e-16;
} // namespace

Potential Potential::square_well(double depth, double width) {
    if (width <= 0) throw DomainError("square well width must be positive");
    Potential p;
    p.kind_ = PotentialKind::SquareWell;
    p.p1_ = depth;
    p.p2_ = width;
    p.finalize();
    return p;
}

Potential Potential::exponential(double amplitude, double rate) {
    if (rate <= 0) throw DomainError("exponential rate must be positive");
    Potential p;
    p.kind_ = PotentialKind::Exponential;
    p.p1_ = amplitude;
    p.p2_ = rate;
    p.finalize();
    return p;
}

Potential Potential::gaussian_bump(double height, double width, double center) {
    if (width <= 0) throw DomainError("gaussian bump width must be positive");
    Potential p;
    p.kind_ = PotentialKind::GaussianBump;
    p.p1_ = height;
    p.p2_ = width;
    p.center_ = center;
    p.finalize();
    return p;
}

Potential Potential::grid_sampled(std::vector<double> xs, std::vector<double> vs,
                                  GridInterpolation interp) {
    if (xs.size() != vs.size() || xs.size() < 2)
        throw DomainError("grid-sampled potential needs at least two samples");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw DomainError("grid abscissae must be strictly increasing");
    Potential p;
    p.kind_ = PotentialKind::GridSampled;
    p.grid_x_ = std::move(xs);
    p.grid_v_ = std::move(vs);
    p.interp_ = interp;
    p.finalize();
    return p;
}

Potential Potential::zero() {
    Potential p;
    p.finalize();
    return p;
}

void Potential::finalize() {
    breakpoints_.clear();
    switch (kind_) {
    case PotentialKind::Zero:
        support_hint_ = 0.0;
        break;
    case PotentialKind::SquareWell:
        support_hint_ = p2_;
        breakpoints_ = {p2_};
        break;
    case PotentialKind::Exponential:
        // |V| < |amp| * kNegligible beyond this point
        support_hint_ = std::log(1.0 / kNegligible) / p2_;
        break;
    case PotentialKind::GaussianBump:
        support_hint_ = center_ + p2_ * std::sqrt(std::log(1.0 / kNegligible));
        break;
    case PotentialKind::GridSampled:
        support_hint_ = grid_x_.back();
        breakpoints_ = grid_x_;
        break;
    }
    if (shift_ != 0.0) {
        support_hint_ = std::max(0.0, support_hint_ - shift_);
        for (auto& b : breakpoints_) b -= shift_;
    }
    if (cutoff_ >= 0.0) {
        support_hint_ = std::min(support_hint_, cutoff_);
        breakpoints_.push_back(cutoff_);
    }
    std::erase_if(breakpoints_, [&](double b) { return b <= 0.0; });
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                       breakpoints_.end());
}

double Potential::evaluate_base(double x) const {
    switch (kind_) {
    case PotentialKind::Zero:
        return 0.0;
    case PotentialKind::SquareWell:
        return (x < p2_) ? p1_ : 0.0;
    case PotentialKind::Exponential:
        return p1_ * std::exp(-p2_ * x);
    case PotentialKind::GaussianBump: {
        double t = (x - center_) / p2_;
        return p1_ * std::exp(-t * t);
    }
    case PotentialKind::GridSampled: {
        if (x < grid_x_.front() || x > grid_x_.back()) return 0.0;
        auto it = std::upper_bound(grid_x_.begin(), grid_x_.end(), x);
        std::size_t i = (it == grid_x_.begin()) ? 0 : (it - grid_x_.begin() - 1);
        if (i + 1 >= grid_x_.size()) return grid_v_.back();
        if (interp_ == GridInterpolation::PiecewiseConstant) return grid_v_[i];
        double t = (x - grid_x_[i]) / (grid_x_[i + 1] - grid_x_[i]);
        return grid_v_[i] + t * (grid_v_[i + 1] - grid_v_[i]);
    }
    }
    return 0.0;
}

double Potential::evaluate(double x) const {
    if (x < 0.0) throw DomainError("potential evaluated at negative x");
    if (cutoff_ >= 0.0 && x >= cutoff_) return 0.0;
    double v = evaluate_base(x + shift_);
    if (sign_filter_ > 0) return std::max(v, 0.0);
    if (sign_filter_ < 0) return std::max(-v, 0.0);
    return v;
}

bool Potential::is_zero() const {
    if (kind_ == PotentialKind::Zero) return true;
    if (kind_ == PotentialKind::SquareWell || kind_ == PotentialKind::Exponential ||
        kind_ == PotentialKind::GaussianBump)
        return p1_ == 0.0 || (cutoff_ == 0.0);
    return false;
}

double Potential::l1_tail(double a) const {
    if (a < 0.0) throw DomainError("l1_tail requires a >= 0");
    // closed forms for untransformed models
    if (sign_filter_ == 0 && cutoff_ < 0.0) {
        double s = a + shift_;
        switch (kind_) {
        case PotentialKind::Zero:
            return 0.0;
        case PotentialKind::SquareWell:
            return std::abs(p1_) * std::max(0.0, p2_ - std::max(s, 0.0));
        case PotentialKind::Exponential:
            return std::abs(p1_) / p2_ * std::exp(-p2_ * std::max(s, 0.0));
        case PotentialKind::GaussianBump:
            return std::abs(p1_) * p2_ * 0.5 * std::sqrt(M_PI) *
                   std::erfc((std::max(s, 0.0) - center_) / p2_);
        default:
            break;
        }
    }
    double upper = support_hint();
    if (!std::isfinite(upper)) upper = a + 1.0; // unreachable with current kinds
    if (a >= upper) {
        // residual tail of smooth decaying kinds beyond the hint is below
        // kNegligible * scale; treat as zero
        return 0.0;
    }
    auto f = [&](double x) { return std::abs(evaluate(x)); };
    auto q = integrate_adaptive(f, a, upper, 1e-12, 1e-10);
    return q.value;
}

Potential Potential::truncated(double R) const {
    if (R <= 0.0) throw DomainError("truncation radius must be positive");
    Potential p = *this;
    p.cutoff_ = (cutoff_ >= 0.0) ? std::min(cutoff_, R) : R;
    p.finalize();
    return p;
}

Potential Potential::positive_part() const {
    if (sign_filter_ != 0) throw DomainError("sign split applied twice");
    Potential p = *this;
    p.sign_filter_ = +1;
    p.finalize();
    return p;
}

Potential Potential::negative_part() const {
    if (sign_filter_ != 0) throw DomainError("sign split applied twice");
    Potential p = *this;
    p.sign_filter_ = -1;
    p.finalize();
    return p;
}

Potential Potential::shifted(double x0) const {
    Potential p = *this;
    p.shift_ += x0;
    if (p.cutoff_ >= 0.0) p.cutoff_ = std::max(0.0, p.cutoff_ - x0);
    p.finalize();
    return p;
}

std::string Potential::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case PotentialKind::Zero: os << "zero"; break;
    case PotentialKind::SquareWell: os << "square-well(depth=" << p1_ << ",width=" << p2_ << ")"; break;
    case PotentialKind::Exponential: os << "exponential(amplitude=" << p1_ << ",rate=" << p2_ << ")"; break;
    case PotentialKind::GaussianBump:
        os << "gaussian-bump(height=" << p1_ << ",width=" << p2_ << ",center=" << center_ << ")";
        break;
    case PotentialKind::GridSampled: os << "grid-sampled(" << grid_x_.size() << " points)"; break;
    }
    if (shift_ != 0.0) os << " shifted by " << shift_;
    if (cutoff_ >= 0.0) os << " truncated at " << cutoff_;
    if (sign_filter_ > 0) os << " [positive part]";
    if (sign_filter_ < 0) os << " [negative part]";
    return os.str();
}

Factorization factorize(const Potential& pot) {
    Factorization f;
    f.v = [pot](double x) { return std::sqrt(std::abs(pot.evaluate(x))); };
    f.u = [pot](double x) {
        double V = pot.evaluate(x);
        double v = std::sqrt(std::abs(V));
        return (V < 0.0) ? -v : v; // sgn(0) := +1
    };
    return f;
}

TruncateSplitResult truncate_and_split(const Potential& pot, double R) {
    if (R <= 0.0) throw DomainError("truncate_and_split requires R > 0");
    return TruncateSplitResult{pot.truncated(R), pot.positive_part(), pot.negative_part()};
}

} // namespace ssflab
