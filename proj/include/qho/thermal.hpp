#pragma once

// Canonical-ensemble position statistics of the harmonic oscillator.
//
// All quantities depend on the oscillator only through alpha and on the
// temperature only through theta = beta hbar omega:
//
//   P_T(x)  = alpha/sqrt(pi) sqrt(t) exp(-alpha^2 t x^2),  t = tanh(theta/2)
//   <x^2>   = 1 / (2 alpha^2 t)
//
// The zero-temperature limit is the ground-state Gaussian, the high-temperature
// limit the Boltzmann Gaussian with variance k_B T / (m omega^2).

#include <cstdint>
#include <span>
#include <vector>

#include "qho/units.hpp"

namespace qho {

// Boltzmann occupation of level n: e^{-n theta} (1 - e^{-theta}).
double occupation(double coldness, std::int64_t n);

class OccupationWeights {
 public:
  static constexpr double kDefaultEpsilon = 1e-12;
  static constexpr std::int64_t kDefaultCap = 1'000'000;

  // Keeps levels 0..n_max with n_max the smallest index whose geometric tail
  // e^{-(n_max+1) theta} is below epsilon. Throws TruncationError if that
  // index exceeds `cap`.
  static OccupationWeights truncated(double coldness, double epsilon = kDefaultEpsilon,
                                     std::int64_t cap = kDefaultCap);

  double coldness() const noexcept { return coldness_; }
  std::int64_t n_max() const noexcept { return static_cast<std::int64_t>(weights_.size()) - 1; }
  std::span<const double> weights() const noexcept { return weights_; }
  // Total weight of the dropped levels, e^{-(n_max+1) theta}.
  double tail_bound() const noexcept { return tail_bound_; }

 private:
  OccupationWeights(double coldness, std::vector<double> weights, double tail_bound)
      : coldness_(coldness), weights_(std::move(weights)), tail_bound_(tail_bound) {}

  double coldness_;
  std::vector<double> weights_;
  double tail_bound_;
};

// Smallest n with scale * e^{-(n+1) theta} < epsilon (0 if already satisfied).
// Throws TruncationError if the answer exceeds cap.
std::int64_t truncation_index(double coldness, double epsilon, double scale, std::int64_t cap);

// tanh(theta / 2), the factor that carries all quantum corrections.
double thermal_factor(double coldness);

double thermal_density(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal);
double ground_density(double x, const OscillatorSpec& oscillator);
double classical_density(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal);

double variance(const OscillatorSpec& oscillator, const ThermalSpec& thermal);
double variance_ground(const OscillatorSpec& oscillator);
double variance_classical(const OscillatorSpec& oscillator, const ThermalSpec& thermal);

// <x^2> split into its zero-point part and the two excesses, each computed
// without cancellation. The excess over the ground state,
// <x^2>_0 * 2/(e^theta - 1), drops below double resolution relative to
// <x^2>_0 for theta > ~37 and underflows entirely past ~745, so its logarithm
// is also kept.
struct VarianceDecomposition {
  double total = 0.0;
  double ground = 0.0;
  double classical = 0.0;
  double excess_over_ground = 0.0;
  double log_excess_over_ground = 0.0;
  // <x^2> - <x^2>_cl = <x^2>_cl ((theta/2) coth(theta/2) - 1).
  double excess_over_classical = 0.0;
};

VarianceDecomposition decompose_variance(const OscillatorSpec& oscillator, const ThermalSpec& thermal);

}  // namespace qho
