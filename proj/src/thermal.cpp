#include "qho/thermal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qho/errors.hpp"

namespace qho {

namespace {

void require_coldness(double coldness) { detail::require_positive_finite(coldness, "coldness"); }

// (theta/2) coth(theta/2) - 1 without cancellation for small theta.
double coth_excess(double coldness) {
  const double h = 0.5 * coldness;
  if (h < 1e-2) {
    // h coth h - 1 = h^2/3 - h^4/45 + 2 h^6/945 - h^8/4725 + ...
    const double h2 = h * h;
    return h2 * (1.0 / 3.0 + h2 * (-1.0 / 45.0 + h2 * (2.0 / 945.0 - h2 / 4725.0)));
  }
  return h / std::tanh(h) - 1.0;
}

}  // namespace

double occupation(double coldness, std::int64_t n) {
  require_coldness(coldness);
  if (n < 0) throw ValidationError("n", "quantum number must be non-negative");
  return std::exp(-static_cast<double>(n) * coldness) * -std::expm1(-coldness);
}

std::int64_t truncation_index(double coldness, double epsilon, double scale, std::int64_t cap) {
  require_coldness(coldness);
  detail::require_positive_finite(epsilon, "epsilon");
  detail::require_positive_finite(scale, "scale");
  // scale e^{-(n+1) theta} < epsilon  <=>  n + 1 > ln(scale/epsilon) / theta
  const double bound = std::log(scale / epsilon) / coldness;
  double n = bound <= 0.0 ? 0.0 : std::floor(bound);
  if (n > static_cast<double>(cap)) {
    const double achievable = scale * std::exp(-(static_cast<double>(cap) + 1.0) * coldness);
    throw TruncationError("theta = " + std::to_string(coldness) + " needs more than " + std::to_string(cap) +
                              " levels; best achievable tail bound at the cap is " + std::to_string(achievable),
                          achievable);
  }
  auto index = static_cast<std::int64_t>(n);
  // Guard the floor against rounding on either side.
  while (index > 0 && scale * std::exp(-static_cast<double>(index) * coldness) < epsilon) --index;
  while (scale * std::exp(-static_cast<double>(index + 1) * coldness) >= epsilon) ++index;
  return index;
}

OccupationWeights OccupationWeights::truncated(double coldness, double epsilon, std::int64_t cap) {
  const std::int64_t n_max = truncation_index(coldness, epsilon, 1.0, cap);
  std::vector<double> weights(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n) weights[static_cast<std::size_t>(n)] = occupation(coldness, n);
  return OccupationWeights(coldness, std::move(weights), std::exp(-static_cast<double>(n_max + 1) * coldness));
}

double thermal_factor(double coldness) {
  require_coldness(coldness);
  // std::tanh is accurate to an ulp for small arguments and returns exactly 1
  // once theta/2 > ~19; neither end needs a special path.
  return std::tanh(0.5 * coldness);
}

double thermal_density(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  detail::require_finite(x, "x");
  const double alpha = oscillator.width_parameter();
  const double t = thermal_factor(thermal.coldness());
  const double ax = alpha * x;
  return alpha * std::numbers::inv_sqrtpi * std::sqrt(t) * std::exp(-t * ax * ax);
}

double ground_density(double x, const OscillatorSpec& oscillator) {
  detail::require_finite(x, "x");
  const double alpha = oscillator.width_parameter();
  const double ax = alpha * x;
  return alpha * std::numbers::inv_sqrtpi * std::exp(-ax * ax);
}

double classical_density(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  detail::require_finite(x, "x");
  const double stiffness = thermal.beta() * oscillator.spring_constant();
  return std::sqrt(stiffness / (2.0 * std::numbers::pi)) * std::exp(-0.5 * stiffness * x * x);
}

double variance(const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  const double alpha = oscillator.width_parameter();
  return 1.0 / (2.0 * alpha * alpha * thermal_factor(thermal.coldness()));
}

double variance_ground(const OscillatorSpec& oscillator) {
  const double alpha = oscillator.width_parameter();
  return 1.0 / (2.0 * alpha * alpha);
}

double variance_classical(const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  require_coldness(thermal.coldness());
  const double alpha = oscillator.width_parameter();
  return 1.0 / (alpha * alpha * thermal.coldness());
}

VarianceDecomposition decompose_variance(const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  const double theta = thermal.coldness();
  VarianceDecomposition d;
  d.total = variance(oscillator, thermal);
  d.ground = variance_ground(oscillator);
  d.classical = variance_classical(oscillator, thermal);
  // coth(h) - 1 = 2 / (e^{2h} - 1) with 2h = theta.
  d.excess_over_ground = 2.0 * d.ground / std::expm1(theta);
  // log(2/(e^theta - 1)) = log 2 - theta - log(1 - e^{-theta})
  d.log_excess_over_ground = std::log(2.0 * d.ground) - theta - std::log(-std::expm1(-theta));
  d.excess_over_classical = d.classical * coth_excess(theta);
  return d;
}

}  // namespace qho
