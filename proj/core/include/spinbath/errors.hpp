#ifndef SPINBATH_ERRORS_HPP
#define SPINBATH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinbath {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation requested exactly at a pole or zero of a defining expression.
class SingularEvaluation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its tolerance. Carries the best
/// estimate achieved and the associated error bound.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// No interior extremum could be bracketed in the requested window.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time integration became unstable for the requested step size.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinbath

#endif
