#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jmatrix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (bad index, x outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Coupling is not supercritical: A <= (l + 1/2)^2.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or numerically on top of) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration did not reach its target within the term budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A recursion hit a zero divisor; `index` is the offending n.
class ZeroDivisorError : public Error {
 public:
  ZeroDivisorError(const std::string& what, std::ptrdiff_t index)
      : Error(what + " (n = " + std::to_string(index) + ")"), index_(index) {}
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : Error(what + " (condition estimate " + std::to_string(condition_estimate) + ")"),
        condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class DegenerateEigenvalueError : public Error {
 public:
  using Error::Error;
};

/// |S| deviates from 1 by more than the accepted tolerance.
class UnitarityError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration. `field` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace jmatrix
