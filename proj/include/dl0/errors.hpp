#pragma once

#include <stdexcept>
#include <string>

namespace dl0 {

// Shape disagreement between operands (matrix/vector dims).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside its documented domain (sigma, keep-prob, M, lambda, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite value produced mid-iteration; usually means the dictionary
// scaling contract was violated or the learning rate is too hot.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// On-disk format problems, one subclass per distinct failure the readers
// are required to tell apart.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationError : FormatError {
    using FormatError::FormatError;
};
struct VersionError : FormatError {
    using FormatError::FormatError;
};

// A backward pass was invoked with a consumed or foreign tape.
struct TapeError : std::logic_error {
    using std::logic_error::logic_error;
};

// Metric has no defined value for the given inputs (e.g. all-zero targets).
struct UndefinedMetricError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dl0
