#pragma once

#include <stdexcept>
#include <string>

namespace mldiff {

/// Bad user input: config files, malformed problems, invalid expressions.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical tripwire: zero pivot, singular operator, zero reference norm.
/// These indicate an invalid operator or a degenerate problem, not a
/// recoverable state.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mldiff
