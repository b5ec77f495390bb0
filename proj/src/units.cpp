#include "qho/units.hpp"

#include <cmath>

#include "qho/errors.hpp"

namespace qho {

namespace {

// Coherent molecular system: amu, angstrom, ps, K.
constexpr double kMolecularEnergy =
    codata::atomic_mass_unit * codata::angstrom * codata::angstrom / (codata::picosecond * codata::picosecond);

}  // namespace

std::string_view to_string(UnitTag tag) {
  switch (tag) {
    case UnitTag::Reduced:
      return "reduced";
    case UnitTag::Molecular:
      return "molecular";
  }
  return "unknown";
}

UnitSystem UnitSystem::reduced() { return UnitSystem{}; }

UnitSystem UnitSystem::molecular() {
  UnitSystem u;
  u.tag = UnitTag::Molecular;
  u.hbar = codata::reduced_planck / (kMolecularEnergy * codata::picosecond);
  u.boltzmann = codata::boltzmann / kMolecularEnergy;
  // omega = 2 pi c * wavenumber, c expressed in cm / ps.
  u.angular_frequency_per_wavenumber =
      2.0 * codata::pi * codata::speed_of_light * codata::picosecond / codata::centimetre;
  u.mass_unit = "amu";
  u.length_unit = "angstrom";
  u.time_unit = "ps";
  u.temperature_unit = "K";
  return u;
}

bool operator==(const UnitSystem& a, const UnitSystem& b) {
  return a.tag == b.tag && a.hbar == b.hbar && a.boltzmann == b.boltzmann &&
         a.angular_frequency_per_wavenumber == b.angular_frequency_per_wavenumber;
}

OscillatorSpec::OscillatorSpec(double mass, double spring_constant, double frequency, const UnitSystem& units)
    : mass_(mass),
      spring_constant_(spring_constant),
      frequency_(frequency),
      width_parameter_(std::sqrt(mass * frequency / units.hbar)),
      units_(units) {
  detail::require_positive_finite(frequency_, "frequency");
  detail::require_positive_finite(width_parameter_, "width_parameter");
}

OscillatorSpec OscillatorSpec::from_spring_constant(double mass, double spring_constant, const UnitSystem& units) {
  detail::require_positive_finite(mass, "mass");
  detail::require_positive_finite(spring_constant, "spring_constant");
  return OscillatorSpec(mass, spring_constant, std::sqrt(spring_constant / mass), units);
}

OscillatorSpec OscillatorSpec::from_frequency(double mass, double frequency, const UnitSystem& units) {
  detail::require_positive_finite(mass, "mass");
  detail::require_positive_finite(frequency, "frequency");
  return OscillatorSpec(mass, mass * frequency * frequency, frequency, units);
}

OscillatorSpec OscillatorSpec::from_wavenumber(double mass_amu, double wavenumber_cm1) {
  detail::require_positive_finite(wavenumber_cm1, "wavenumber_cm1");
  const UnitSystem units = UnitSystem::molecular();
  return from_frequency(mass_amu, units.angular_frequency_per_wavenumber * wavenumber_cm1, units);
}

OscillatorSpec OscillatorSpec::reduced(double alpha) {
  detail::require_positive_finite(alpha, "alpha");
  return from_frequency(alpha * alpha, 1.0, UnitSystem::reduced());
}

ThermalSpec ThermalSpec::from_temperature(double temperature, const OscillatorSpec& oscillator) {
  detail::require_positive_finite(temperature, "temperature");
  const double kb = oscillator.units().boltzmann;
  const double beta = 1.0 / (kb * temperature);
  detail::require_positive_finite(beta, "beta");
  return ThermalSpec(temperature, beta, beta * oscillator.quantum(), kb);
}

ThermalSpec ThermalSpec::from_beta(double beta, const OscillatorSpec& oscillator) {
  detail::require_positive_finite(beta, "beta");
  const double kb = oscillator.units().boltzmann;
  const double temperature = 1.0 / (kb * beta);
  detail::require_positive_finite(temperature, "temperature");
  return ThermalSpec(temperature, beta, beta * oscillator.quantum(), kb);
}

ThermalSpec ThermalSpec::from_coldness(double coldness, const OscillatorSpec& oscillator) {
  detail::require_positive_finite(coldness, "coldness");
  const double beta = coldness / oscillator.quantum();
  const double kb = oscillator.units().boltzmann;
  const double temperature = 1.0 / (kb * beta);
  detail::require_positive_finite(beta, "beta");
  detail::require_positive_finite(temperature, "temperature");
  return ThermalSpec(temperature, beta, coldness, kb);
}

ReducedProblem to_reduced(const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  const UnitSystem& src = oscillator.units();
  ReducedScales scales;
  scales.mass = oscillator.mass();
  scales.time = 1.0 / oscillator.frequency();
  scales.length = 1.0 / oscillator.width_parameter();
  scales.energy = oscillator.quantum();
  scales.temperature = oscillator.quantum() / src.boltzmann;

  const OscillatorSpec reduced = OscillatorSpec::from_frequency(1.0, 1.0, UnitSystem::reduced());
  return ReducedProblem{reduced, ThermalSpec::from_coldness(thermal.coldness(), reduced), scales, src};
}

PhysicalProblem from_reduced(const ReducedProblem& problem) {
  const ReducedScales& s = problem.scales;
  const OscillatorSpec osc = OscillatorSpec::from_frequency(
      problem.oscillator.mass() * s.mass, problem.oscillator.frequency() / s.time, problem.source_units);
  return PhysicalProblem{osc, ThermalSpec::from_temperature(problem.thermal.temperature() * s.temperature, osc)};
}

double coldness_from_wavenumber(double wavenumber_cm1, double temperature_k) {
  detail::require_positive_finite(wavenumber_cm1, "wavenumber_cm1");
  detail::require_positive_finite(temperature_k, "temperature");
  return codata::second_radiation_constant / codata::centimetre * wavenumber_cm1 / temperature_k;
}

double quantumness_ratio(const OscillatorSpec& oscillator, const ThermalSpec& thermal) {
  return 2.0 * thermal.boltzmann() * thermal.temperature() / oscillator.quantum();
}

}  // namespace qho
