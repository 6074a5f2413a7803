#pragma once

#include <stdexcept>
#include <string>

namespace projbound {

/// Invalid parameters (Jacobi exponents, degrees, truncation orders).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative method failed to converge or an internal cross-check failed.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (point-set files, mismatched nodes).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace projbound
