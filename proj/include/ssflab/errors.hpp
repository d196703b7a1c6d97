#ifndef SSFLAB_ERRORS_HPP
#define SSFLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ssflab {

// Invalid argument outside the documented domain (negative x, R <= 0, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// z = 0 or other branch-root failures of z^{1/2}.
struct BranchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature did not converge; carries the best estimate obtained.
struct AccuracyError : std::runtime_error {
    AccuracyError(const std::string& msg, double estimate, double error)
        : std::runtime_error(msg), estimate(estimate), error(error) {}
    double estimate;
    double error;
};

// ODE step-size underflow; carries the last x reached.
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& msg, double last_x)
        : std::runtime_error(msg), last_x(last_x) {}
    double last_x;
};

// z too close to an eigenvalue: a Wronskian or denominator fell below threshold.
struct NearEigenvalueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested Jost tail tolerance cannot be certified (e.g. sampled potential
// without a support hint).
struct TailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nystrom LU pivot below threshold.
struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase increment >= pi/2 persisted through maximum bisection depth.
struct GridRefinementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Config file rejected (unknown key, range violation, bad CSV row, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ssflab

#endif
