#pragma once

#include <stdexcept>
#include <string>

namespace eigloc {

/// Argument outside the mathematical domain of an operation (x < 0, NaN, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Mode index that does not name an eigenfunction (e.g. n = 0, i = 2 on a disk).
class InvalidIndex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Boundary condition not supported for the requested domain.
class UnsupportedCondition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base of all numerical breakdowns; the CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A root bracket could not be established or refined.
class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Fourier coefficients did not decay within the truncation size.
class TruncationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Iterative refinement (quadrature, series) did not reach its tolerance.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A parameter scan ran past its ceiling before finding the requested root.
class ScanExhausted : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace eigloc
