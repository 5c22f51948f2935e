#pragma once

#include <stdexcept>
#include <string>

namespace hzone {

// Base of everything thrown by the library, so callers (in particular the
// CLI) can map failures to exit codes without catching std::exception.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed decimal text.
struct ParseError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of an operation (branch cut,
// nonpositive argument of K, evaluation radius exceeded, ...).
struct DomainError : Error {
    using Error::Error;
};

// Saddle multiplier within tolerance of 1; series recurrences would divide
// by a vanishing resonance denominator.
struct DegenerateSaddleError : Error {
    using Error::Error;
};

// Orbit escaped the configured bounding box during global continuation.
struct DivergenceError : Error {
    using Error::Error;
};

// A requested accuracy target cannot be met within the configured caps.
struct CapacityError : Error {
    using Error::Error;
};

// A finite-difference denominator or pivot fell below its guard.
struct ConditioningError : Error {
    using Error::Error;
};

// A scalar solve lost its bracket (non-monotone data).
struct BracketingError : Error {
    using Error::Error;
};

// An iteration exhausted its budget without meeting its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// Operation not defined for the requested family.
struct NotApplicableError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace hzone
