#ifndef BDCA_ERRORS_HPP
#define BDCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bdca {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An input violates a manifold constraint (Lorentz shell, positivity,
/// symmetry, tangency) or a shape/dimension requirement.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A kernel would leave the range of double precision (cosh/sinh overflow).
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Gradient requested where the function is not differentiable
/// (zero-direction Busemann function at its base point).
class UndefinedGradientError : public Error {
public:
  using Error::Error;
};

/// A matrix that must be positive definite is not.
class DefinitenessError : public Error {
public:
  using Error::Error;
};

/// Busemann direction is zero where a nonzero one is required.
class ZeroDirectionError : public Error {
public:
  using Error::Error;
};

/// A logarithm/arcosh argument left its domain by more than rounding slack.
class NumericalDomainError : public Error {
public:
  using Error::Error;
};

/// Problem construction parameters are inconsistent.
class ConstructionError : public Error {
public:
  using Error::Error;
};

} // namespace bdca

#endif // BDCA_ERRORS_HPP
