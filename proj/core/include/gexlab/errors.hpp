#pragma once

#include <stdexcept>
#include <string>

namespace gexlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A domain object was built from inconsistent data.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A user function produced a non-finite value at a support point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A grid is too small for the requested operator.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Lattice index arithmetic or grid allocation would overflow.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration exceeds its configured ceiling.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Invalid numerical or experiment parameters.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// The PDE time march produced a non-finite value.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// The mean-zero hypothesis of the moment bound / CLT does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (e.g. invalid JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gexlab
