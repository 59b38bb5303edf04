#pragma once

#include <stdexcept>
#include <string>

namespace rtherm {

// Base of every error the library throws. Each subclass maps onto one
// status code of the C API.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature exhausted its subdivision budget. Carries the best
// estimate it reached so callers can decide whether it is usable.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_value, double best_error)
      : Error(what), best_value_(best_value), best_error_(best_error) {}

  double best_value() const noexcept { return best_value_; }
  double best_error() const noexcept { return best_error_; }

 private:
  double best_value_;
  double best_error_;
};

// The absorption profile vanishes everywhere, so no flux balance exists.
class DegenerateProfileError : public Error {
 public:
  using Error::Error;
};

// Root bracketing or iteration failed.
class SolverError : public Error {
 public:
  using Error::Error;
};

// A quantity left the representable range of double.
class OverflowGuardError : public Error {
 public:
  using Error::Error;
};

// The entropy probe was asked for a configuration with no unboundedness.
class DegenerateProbeError : public Error {
 public:
  using Error::Error;
};

}  // namespace rtherm
