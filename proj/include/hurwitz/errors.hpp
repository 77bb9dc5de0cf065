#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyPolynomialError : Error {
    using Error::Error;
};

// A column of the input is identically zero; the polynomial cannot be regular.
struct ZeroColumnError : Error {
    using Error::Error;
};

struct NotColumnReducedError : Error {
    using Error::Error;
};

struct DegreeZeroError : Error {
    using Error::Error;
};

// The leading column-degree coefficient matrix is numerically singular.
struct SingularLeadingBlockError : Error {
    using Error::Error;
};

struct SequenceTooShortError : Error {
    using Error::Error;
};

struct NotHermitianError : Error {
    using Error::Error;
};

struct NotHermitianSequenceError : Error {
    using Error::Error;
};

struct NotACommonMultipleError : Error {
    using Error::Error;
};

struct NotRegularError : Error {
    using Error::Error;
};

struct SolverFailureError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

}  // namespace hurwitz
