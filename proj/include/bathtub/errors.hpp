#pragma once

#include <stdexcept>
#include <string>

namespace bathtub {

/// Raised when an input violates a documented bound (parameters, domains,
/// configuration). The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a solver cannot produce an equilibrium (no sign change,
/// no convergence). The CLI maps it to exit code 3.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bathtub
