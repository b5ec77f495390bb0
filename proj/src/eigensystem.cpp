#include "qho/eigensystem.hpp"

#include <limits>
#include <string>

#include "qho/errors.hpp"

namespace qho {

namespace {

constexpr double kPiQuarterRoot = 0.75112554446494248285870300477622;  // pi^(-1/4)
constexpr double kRescaleThreshold = 1e150;
const double kRescaleLog = std::log(kRescaleThreshold);
// exp(x) is a normal double for x above this.
constexpr double kSafeLog = -700.0;

void require_index(std::int64_t n) {
  if (n < 0) throw ValidationError("n", "quantum number must be non-negative, got " + std::to_string(n));
}

}  // namespace

double energy(std::int64_t n, const OscillatorSpec& oscillator) {
  require_index(n);
  return oscillator.quantum() * (static_cast<double>(n) + 0.5);
}

EigenLevel level(std::int64_t n, const OscillatorSpec& oscillator) { return {n, energy(n, oscillator)}; }

double hermite(std::int64_t n, double y) {
  require_index(n);
  detail::require_finite(y, "y");
  double previous = 1.0;
  if (n == 0) return previous;
  double current = 2.0 * y;
  for (std::int64_t k = 1; k < n; ++k) {
    const double next = 2.0 * y * current - 2.0 * static_cast<double>(k) * previous;
    previous = current;
    current = next;
    if (!std::isfinite(current)) {
      throw OverflowError("H_" + std::to_string(n) + "(" + std::to_string(y) +
                          ") overflows; use hermite_function for the normalized form");
    }
  }
  return current;
}

HermiteFunctionSweep::HermiteFunctionSweep(double y) : y_(y), current_(kPiQuarterRoot), log_scale_(-0.5 * y * y) {
  detail::require_finite(y, "y");
}

double HermiteFunctionSweep::value() const {
  if (current_ == 0.0) return 0.0;
  if (log_scale_ > kSafeLog) return current_ * std::exp(log_scale_);
  return std::copysign(std::exp(std::log(std::abs(current_)) + log_scale_), current_);
}

double HermiteFunctionSweep::square() const {
  if (current_ == 0.0) return 0.0;
  if (log_scale_ > 0.5 * kSafeLog) {
    const double v = current_ * std::exp(log_scale_);
    return v * v;
  }
  return std::exp(2.0 * (std::log(std::abs(current_)) + log_scale_));
}

void HermiteFunctionSweep::advance() {
  const double k = static_cast<double>(n_);
  const double next = y_ * std::sqrt(2.0 / (k + 1.0)) * current_ - std::sqrt(k / (k + 1.0)) * previous_;
  previous_ = current_;
  current_ = next;
  ++n_;
  if (std::abs(current_) > kRescaleThreshold) {
    current_ /= kRescaleThreshold;
    previous_ /= kRescaleThreshold;
    log_scale_ += kRescaleLog;
  }
}

double hermite_function(std::int64_t n, double y) {
  require_index(n);
  HermiteFunctionSweep sweep(y);
  while (sweep.index() < n) sweep.advance();
  return sweep.value();
}

double eigen_density(std::int64_t n, double x, const OscillatorSpec& oscillator) {
  require_index(n);
  detail::require_finite(x, "x");
  const double alpha = oscillator.width_parameter();
  HermiteFunctionSweep sweep(alpha * x);
  while (sweep.index() < n) sweep.advance();
  return alpha * sweep.square();
}

}  // namespace qho
