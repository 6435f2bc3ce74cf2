#pragma once

#include <stdexcept>
#include <string>

namespace mbwave {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters, malformed scenarios, or requests outside a contract.
// The CLI maps this to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Evaluation outside the space-time cone covered by a profile.
class OutOfDomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Quadrature failure, divergence, or an exhausted recursion budget.
// The CLI maps this to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace mbwave
