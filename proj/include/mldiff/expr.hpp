#pragma once

#include <functional>
#include <string>

namespace mldiff {

/// Parses a small arithmetic expression in one variable x: numbers, x,
/// + - * / ^ and parentheses ('^' binds tightest, right-associative).
/// Intended for per-layer initial conditions in config files. Throws
/// ConfigError on malformed input.
std::function<double(double)> parse_expression(const std::string& source);

} // namespace mldiff
