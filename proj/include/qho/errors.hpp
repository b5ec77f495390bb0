#pragma once

#include <stdexcept>
#include <string>

namespace qho {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input value failed validation; `field()` names the offending quantity.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Argument outside the mathematical domain of a function (e.g. |x| >= A for the
// microcanonical density).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Raw Hermite polynomial left the double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Adaptive refinement hit its depth limit. The best available estimate is kept.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

// A truncated series would need more terms than the configured cap allows.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achievable_tolerance)
      : Error(what), achievable_tolerance_(achievable_tolerance) {}

  double achievable_tolerance() const noexcept { return achievable_tolerance_; }

 private:
  double achievable_tolerance_;
};

namespace detail {

void require_positive_finite(double value, const char* field);
void require_finite(double value, const char* field);

}  // namespace detail

}  // namespace qho
