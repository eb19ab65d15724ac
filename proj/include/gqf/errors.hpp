// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gqf {

// Invalid problem data (non-Hermitian covariance, non-indefinite kernel, bad
// arguments). Distinct from NumericalError so callers can map the two classes
// to different exit paths.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Failure of a numerical procedure on data that passed validation.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : NumericalError {
    using NumericalError::NumericalError;
};

// A series or iteration hit its term budget before reaching tolerance.
struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

// Intermediate value left the double range where rescaling cannot help.
struct OverflowError : NumericalError {
    using NumericalError::NumericalError;
};

// A quantity that must be a square of a real number came out negative beyond
// rounding tolerance. Unreachable from a valid problem (see legacy.hpp); it
// guards the closed forms against inconsistent input slipping past
// validation.
struct NegativeRadicandError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace gqf
