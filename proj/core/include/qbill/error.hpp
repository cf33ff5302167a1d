#pragma once

#include <stdexcept>
#include <string>

namespace qbill {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad index, out-of-range ratio, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Tensor or grid dimensions disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A binary artifact is truncated, corrupt, or of an unexpected version.
class FormatError : public Error {
public:
    using Error::Error;
};

/// The dense eigensolver did not converge.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace qbill
