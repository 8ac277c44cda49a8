#pragma once

#include <stdexcept>

namespace riskmdp {

/// Malformed document or unsupported schema while reading an instance file.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instance data violates a model invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown inside a solver (degenerate pivot, iteration cap hit).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace riskmdp
