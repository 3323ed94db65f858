#pragma once

#include <stdexcept>
#include <string>

namespace cuma {

/// Bad input: out-of-range argument, invalid configuration, unknown preset.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a trustworthy number.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Series or quadrature that did not reach its tolerance within its budget.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Correlation matrix with an eigenvalue below -psd_tol.
class NotPositiveSemidefinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace cuma
