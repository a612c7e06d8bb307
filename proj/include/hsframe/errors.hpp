#pragma once

#include <stdexcept>
#include <string>

namespace hsframe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar parameter is outside its admissible range (p < 1, lambda outside [0,1], ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Operand violates a structural precondition (not Hermitian, P + Q != I, non-finite entries, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An eigen/singular value solver failed to converge or produced non-finite output.
class DecompositionError : public Error {
public:
    using Error::Error;
};

/// A Hermitian operand is not positive definite enough to invert.
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double eigenvalue)
        : Error(what + " (min eigenvalue " + std::to_string(eigenvalue) + ")"), eigenvalue_(eigenvalue) {}

    double eigenvalue() const noexcept { return eigenvalue_; }

private:
    double eigenvalue_;
};

/// A Parseval-only verifier received a frame whose bounds are not (1, 1).
class NotParsevalError : public Error {
public:
    using Error::Error;
};

/// A dual-frame verifier received no dual, or a family that is not a dual.
class InvalidDualError : public Error {
public:
    using Error::Error;
};

/// A serialized frame, spec or config is malformed.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace hsframe
