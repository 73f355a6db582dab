#pragma once

#include <stdexcept>
#include <string>

namespace disclosure {

/// Base class for every error raised by the library. The CLI maps
/// SchemaError to exit status 2 and everything else to exit status 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. x outside [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Conditional expectation requested on a set of prior measure zero.
class ZeroMassError : public Error {
public:
    using Error::Error;
};

/// Root finder was handed a bracket whose endpoint residuals share a sign.
class NoBracketError : public Error {
public:
    using Error::Error;
};

class NonMonotoneError : public Error {
public:
    using Error::Error;
};

/// Cells do not cover [0,1] or overlap on a set of positive measure.
class InvalidRepresentationError : public Error {
public:
    using Error::Error;
};

class NotCanonicalError : public Error {
public:
    using Error::Error;
};

/// A bi-pooling support that no mean-preserving contraction can realize.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class TargetOutOfRangeError : public Error {
public:
    using Error::Error;
};

/// Numerical failure inside a solver (LP breakdown, missed tolerance, ...).
class SolverError : public Error {
public:
    using Error::Error;
};

class SegmentRecoveryError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Input that does not match the expected JSON schema or model invariants.
class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace disclosure
