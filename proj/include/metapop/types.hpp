#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace metapop {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Thrown when an input lies outside an operation's stated domain
// (negative density, Logistic evaluated past 1, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a model or scenario cannot be constructed as specified
// (condition (D) violation, unknown map kind, bad parameter path, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative numerical procedure fails (non-convergent
// power iteration, NaN/overflow in a simulated state).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace metapop
