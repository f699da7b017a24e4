#pragma once

#include <stdexcept>
#include <string>

namespace gpolar {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: wrong shape, non-Hermitian where Hermitian is required, singular
// where nonsingular is required, non-finite entries.
class DomainError : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public DomainError {
public:
    explicit ShapeMismatch(const std::string& what) : DomainError("shape mismatch: " + what) {}
};

class NotPsdError : public DomainError {
public:
    using DomainError::DomainError;
};

// A stated hypothesis of a bound or identity does not hold for the input.
class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

// Spectra of the two Sylvester coefficients intersect.
class NoUniqueSolution : public DomainError {
public:
    using DomainError::DomainError;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Eigensolver/SVD did not converge or produced non-finite output.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// Assembled solution fails its residual check.
class InconsistentSystem : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

} // namespace gpolar
