#pragma once

#include <stdexcept>
#include <string>

namespace gapqp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Violated precondition that is not a plain domain check (near resonance,
/// insufficient data span, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Invalid or incomplete configuration (tables, anchors, config files).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed gap-profile geometry.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Root bracket without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Generic numerical failure (eigensolver breakdown, non-finite values).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Frequency grid does not cover the frequencies that must be rendered.
class CoverageError : public Error {
public:
    using Error::Error;
};

}  // namespace gapqp
