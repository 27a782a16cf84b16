#pragma once

#include <stdexcept>
#include <string>

namespace madelung {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (v <= 0, tol <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested at a point where the quantity diverges.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Request that is well-formed but not supported for this input, e.g. a
// Hadamard finite part in two dimensions.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Quadrature did not reach the requested tolerance. Carries the best estimate.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  [[nodiscard]] double best_estimate() const noexcept { return best_estimate_; }
  [[nodiscard]] double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

// Two routes that must agree did not (e.g. Ewald splitting self-check).
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace madelung
