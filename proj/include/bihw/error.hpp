#pragma once

#include <stdexcept>
#include <string>

namespace bihw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or inconsistent configuration.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the parameter interval.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A dense operation would exceed the configured size cap.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Degree outside the tabulated range of the stability constants.
class UnsupportedDegreeError : public Error {
public:
    using Error::Error;
};

/// Iterative eigenvalue / Schur computation failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The temporal pencil could not be factored (K_t numerically singular).
class FactorizationError : public Error {
public:
    using Error::Error;
};

/// A diagonal block of the block-triangular space-time system is singular.
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace bihw
