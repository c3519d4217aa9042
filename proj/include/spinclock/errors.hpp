#pragma once

#include <stdexcept>
#include <string>

namespace spinclock {

/// Base class for all failures raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix/vector dimensions do not match what an operation requires.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A parameter is outside its admissible range (epsilon < 0, |mu| > 1, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A general eigendecomposition failed its residual checks; the matrix is
/// (numerically) not diagonalizable and callers must fall back to ODE
/// propagation.
struct NonDiagonalizable : Error {
    using Error::Error;
};

/// An operation that requires a Hermitian matrix received one that is not.
struct NotHermitian : Error {
    using Error::Error;
};

/// A matrix that should represent a quantum state fails hermiticity,
/// unit-trace or positivity checks.
struct NotAState : Error {
    using Error::Error;
};

/// The assembled generator couples matrix-element sectors that must stay
/// decoupled.
struct BlockLeakage : Error {
    using Error::Error;
};

/// The four closed-form eigenvalues driving the register coherences are too
/// close to each other for the spectral formulas to be evaluated stably;
/// callers must use numerical propagation instead.
struct DegenerateOmegas : Error {
    using Error::Error;
};

/// Integration step outside the supported range.
struct StepSizeError : Error {
    using Error::Error;
};

/// A propagated state lost its unit trace beyond tolerance.
struct TraceDrift : Error {
    using Error::Error;
};

/// Two independent routes to the same observable disagree beyond tolerance.
struct IdentityViolation : Error {
    using Error::Error;
};

} // namespace spinclock
