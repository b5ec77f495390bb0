#include "qho/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qho/errors.hpp"
#include "qho/quadrature.hpp"

namespace qho {

namespace {

// Energy cutoff for the canonical integral: the dropped tail is e^{-40} relative.
constexpr double kEnergyCutoff = 40.0;

// Steps per numerical period with fewer distinct sampling phases than this
// many per bin count as resonant.
constexpr int kPhasesPerBin = 10;
constexpr int kMaxResonanceDenominator = 64;

// Verlet's numerical angular frequency: cos(w~ dt) = 1 - (omega dt)^2 / 2.
double steps_per_numerical_period(double omega, double dt) {
  const double wdt = omega * dt;
  return 2.0 * std::numbers::pi / std::acos(1.0 - 0.5 * wdt * wdt);
}

bool is_low_order_resonance(double steps_per_period, int bins) {
  for (int q = 1; q <= kMaxResonanceDenominator; ++q) {
    const double scaled = steps_per_period * q;
    const double p = std::round(scaled);
    if (std::abs(scaled - p) <= 1e-9 * scaled && p < static_cast<double>(kPhasesPerBin) * bins) return true;
  }
  return false;
}

}  // namespace

ClassicalOrbit ClassicalOrbit::from_amplitude(double amplitude, const OscillatorSpec& oscillator) {
  detail::require_positive_finite(amplitude, "amplitude");
  return ClassicalOrbit(amplitude, 0.5 * oscillator.spring_constant() * amplitude * amplitude,
                        2.0 * std::numbers::pi / oscillator.frequency());
}

ClassicalOrbit ClassicalOrbit::from_energy(double energy, const OscillatorSpec& oscillator) {
  detail::require_positive_finite(energy, "energy");
  return ClassicalOrbit(std::sqrt(2.0 * energy / oscillator.spring_constant()), energy,
                        2.0 * std::numbers::pi / oscillator.frequency());
}

double trajectory(double t, const ClassicalOrbit& orbit, const OscillatorSpec& oscillator) {
  detail::require_finite(t, "t");
  return orbit.amplitude() * std::cos(oscillator.frequency() * t);
}

double microcanonical_density(double x, const ClassicalOrbit& orbit) {
  detail::require_finite(x, "x");
  const double a = orbit.amplitude();
  if (std::abs(x) >= a) throw DomainError("microcanonical density is undefined for |x| >= A");
  return 1.0 / (std::numbers::pi * std::sqrt((a - x) * (a + x)));
}

double microcanonical_cdf(double x, const ClassicalOrbit& orbit) {
  const double a = orbit.amplitude();
  if (x <= -a) return 0.0;
  if (x >= a) return 1.0;
  return 0.5 + std::asin(x / a) / std::numbers::pi;
}

double microcanonical_bin_average(double lo, double hi, const ClassicalOrbit& orbit) {
  if (!(hi > lo)) throw ValidationError("bin", "upper edge must exceed lower edge");
  return (microcanonical_cdf(hi, orbit) - microcanonical_cdf(lo, orbit)) / (hi - lo);
}

double canonical_classical_density(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  detail::require_finite(x, "x");
  const double beta = thermal.beta();
  const double k = oscillator.spring_constant();
  const double potential = 0.5 * k * x * x;
  const double z_max = std::sqrt(kEnergyCutoff / beta);

  // dE = 2 z dz and sqrt(E - k x^2/2) = z, so the singular factor cancels.
  const auto integrand = [&](double z) { return 2.0 * std::exp(-beta * (potential + z * z)); };
  QuadratureOptions options;
  options.abs_tol = 1e-12 / std::sqrt(beta);
  const double integral = integrate(integrand, 0.0, z_max, options).value;
  return beta / std::numbers::pi * std::sqrt(0.5 * k) * integral;
}

void integrate_verlet(PhaseState& state, const OscillatorSpec& oscillator, double dt, std::int64_t steps) {
  const double w2 = oscillator.frequency() * oscillator.frequency();
  const double half = 0.5 * dt;
  double x = state.position;
  double v = state.velocity;
  for (std::int64_t i = 0; i < steps; ++i) {
    v -= half * w2 * x;
    x += dt * v;
    v -= half * w2 * x;
  }
  state = {x, v};
}

double mechanical_energy(const PhaseState& state, const OscillatorSpec& oscillator) {
  return 0.5 * oscillator.mass() * state.velocity * state.velocity +
         0.5 * oscillator.spring_constant() * state.position * state.position;
}

double shadow_energy(const PhaseState& state, const OscillatorSpec& oscillator, double dt) {
  const double wdt = oscillator.frequency() * dt;
  return 0.5 * oscillator.mass() * state.velocity * state.velocity +
         0.5 * oscillator.spring_constant() * state.position * state.position * (1.0 - 0.25 * wdt * wdt);
}

TrajectoryHistogram simulate_histogram(const ClassicalOrbit& orbit, const OscillatorSpec& oscillator, double dt,
                                       std::int64_t steps, int bins) {
  detail::require_positive_finite(dt, "dt");
  if (!(dt < orbit.period() / 20.0)) throw ValidationError("dt", "must be below period/20 for a stable run");
  if (steps < 100'000) throw ValidationError("steps", "must be at least 1e5");
  if (bins < 20) throw ValidationError("bins", "must be at least 20");

  TrajectoryHistogram h;
  h.requested_dt = dt;
  const double omega = oscillator.frequency();
  // Nudge by a factor involving the golden ratio until the sampling phases no
  // longer close up after a few periods.
  for (int attempt = 0; attempt < 8 && is_low_order_resonance(steps_per_numerical_period(omega, dt), bins);
       ++attempt) {
    dt *= 1.0 + 1e-3 / std::numbers::phi;
  }
  h.dt = dt;

  const double a = orbit.amplitude();
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.bin_edges[static_cast<std::size_t>(i)] = -a + 2.0 * a * i / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);

  const double w2 = omega * omega;
  const double half = 0.5 * dt;
  const double inv_width = bins / (2.0 * a);
  PhaseState state{a, 0.0};
  const double e0 = mechanical_energy(state, oscillator);
  const double shadow0 = shadow_energy(state, oscillator, dt);
  double max_fluctuation = 0.0;
  double x = state.position;
  double v = state.velocity;
  for (std::int64_t i = 0; i < steps; ++i) {
    v -= half * w2 * x;
    x += dt * v;
    v -= half * w2 * x;
    const auto bin = std::clamp(static_cast<int>(std::floor((x + a) * inv_width)), 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
    const double e = mechanical_energy({x, v}, oscillator);
    max_fluctuation = std::max(max_fluctuation, std::abs(e - e0));
  }
  state = {x, v};
  h.total_steps = steps;
  h.energy_drift = std::abs(shadow_energy(state, oscillator, dt) - shadow0) / shadow0;
  h.max_energy_fluctuation = max_fluctuation / e0;
  h.final_energy_error = std::abs(mechanical_energy(state, oscillator) - e0) / e0;
  return h;
}

double histogram_max_relative_deviation(const TrajectoryHistogram& histogram, const ClassicalOrbit& orbit,
                                        int excluded_edge_bins) {
  const auto bins = static_cast<int>(histogram.counts.size());
  if (excluded_edge_bins < 0 || 2 * excluded_edge_bins >= bins) {
    throw ValidationError("excluded_edge_bins", "leaves no bins to compare");
  }
  double worst = 0.0;
  for (int i = excluded_edge_bins; i < bins - excluded_edge_bins; ++i) {
    const double lo = histogram.bin_edges[static_cast<std::size_t>(i)];
    const double hi = histogram.bin_edges[static_cast<std::size_t>(i) + 1];
    const double empirical = static_cast<double>(histogram.counts[static_cast<std::size_t>(i)]) /
                             (static_cast<double>(histogram.total_steps) * (hi - lo));
    const double analytic = microcanonical_bin_average(lo, hi, orbit);
    worst = std::max(worst, std::abs(empirical / analytic - 1.0));
  }
  return worst;
}

double histogram_asymmetry(const TrajectoryHistogram& histogram) {
  const auto& c = histogram.counts;
  double worst = 0.0;
  for (std::size_t i = 0, j = c.size() - 1; i < j; ++i, --j) {
    const auto hi = std::max(c[i], c[j]);
    if (hi == 0) continue;
    worst = std::max(worst, static_cast<double>(std::abs(c[i] - c[j])) / static_cast<double>(hi));
  }
  return worst;
}

}  // namespace qho
