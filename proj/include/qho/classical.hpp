#pragma once

// Classical oscillator: Newtonian orbit, microcanonical (arcsine) position
// density, its canonical energy average, and a velocity-Verlet simulator used
// as an empirical check on the arcsine law.

#include <cstdint>
#include <vector>

#include "qho/units.hpp"

namespace qho {

class ClassicalOrbit {
 public:
  static ClassicalOrbit from_amplitude(double amplitude, const OscillatorSpec& oscillator);
  static ClassicalOrbit from_energy(double energy, const OscillatorSpec& oscillator);

  double amplitude() const noexcept { return amplitude_; }
  double energy() const noexcept { return energy_; }
  // 2 pi / omega. Named to keep it apart from the temperature.
  double period() const noexcept { return period_; }

 private:
  ClassicalOrbit(double amplitude, double energy, double period)
      : amplitude_(amplitude), energy_(energy), period_(period) {}

  double amplitude_;
  double energy_;
  double period_;
};

// x(t) = A cos(omega t): released from rest at x = A.
double trajectory(double t, const ClassicalOrbit& orbit, const OscillatorSpec& oscillator);

// Time-averaged position density 1/(pi sqrt(A^2 - x^2)). Throws DomainError
// for |x| >= A, where it diverges or vanishes.
double microcanonical_density(double x, const ClassicalOrbit& orbit);
// 1/2 + asin(x/A)/pi, clamped to [0, 1] outside the orbit.
double microcanonical_cdf(double x, const ClassicalOrbit& orbit);
// Mean of the arcsine density over [lo, hi].
double microcanonical_bin_average(double lo, double hi, const ClassicalOrbit& orbit);

// Canonical average of the microcanonical density over energy,
//
//   (beta/pi) sqrt(k/2) integral_{k x^2/2}^inf dE e^{-beta E} / sqrt(E - k x^2/2),
//
// integrated numerically after the substitution E = k x^2/2 + z^2, which
// leaves the smooth integrand 2 e^{-beta E(z)} on z in [0, sqrt(40/beta)].
double canonical_classical_density(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal);

struct PhaseState {
  double position = 0.0;
  double velocity = 0.0;
};

// Advances `state` by `steps` velocity-Verlet steps of size dt under F = -k x.
// A negative dt integrates backwards.
void integrate_verlet(PhaseState& state, const OscillatorSpec& oscillator, double dt, std::int64_t steps);

double mechanical_energy(const PhaseState& state, const OscillatorSpec& oscillator);

// For the harmonic force velocity Verlet conserves
//   H~ = m v^2/2 + k x^2/2 (1 - (omega dt)^2/4)
// exactly in exact arithmetic; its drift measures accumulated error.
double shadow_energy(const PhaseState& state, const OscillatorSpec& oscillator, double dt);

struct TrajectoryHistogram {
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;
  std::int64_t total_steps = 0;
  // Step actually used; differs from the request when it was nudged off a
  // low-order resonance.
  double dt = 0.0;
  double requested_dt = 0.0;
  // |H~(end) - H~(0)| / H~(0).
  double energy_drift = 0.0;
  // max_t |E(t) - E(0)| / E(0) for the plain mechanical energy. Bounded by
  // about (omega dt)^2 / 4 and not secular.
  double max_energy_fluctuation = 0.0;
  // |E(end) - E(0)| / E(0).
  double final_energy_error = 0.0;
};

// Integrates from (A, 0) and histograms the position after every step over
// `bins` equal bins on [-A, A].
//
// Preconditions (ValidationError): dt in (0, period/20), steps >= 1e5, bins >= 20.
TrajectoryHistogram simulate_histogram(const ClassicalOrbit& orbit, const OscillatorSpec& oscillator, double dt,
                                       std::int64_t steps, int bins);

// Largest |empirical/analytic - 1| over bins, skipping `excluded_edge_bins` on
// each side where the arcsine density diverges.
double histogram_max_relative_deviation(const TrajectoryHistogram& histogram, const ClassicalOrbit& orbit,
                                        int excluded_edge_bins = 2);

// Largest |c_i - c_{bins-1-i}| / max(c_i, c_{bins-1-i}).
double histogram_asymmetry(const TrajectoryHistogram& histogram);

}  // namespace qho
