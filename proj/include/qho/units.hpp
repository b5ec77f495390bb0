#pragma once

// Unit handling for the oscillator problem.
//
// Kernels work in any coherent unit system whose hbar and k_B are carried by
// the specs below. Two systems are provided:
//
//   Reduced    hbar = k_B = 1. With m = omega = 1 the width parameter alpha is 1
//              and the temperature is 1/theta.
//   Molecular  mass [amu], length [angstrom], time [ps], temperature [K].
//              Energy is then amu*angstrom^2/ps^2 (= 10 J/mol).
//
// The coldness theta = hbar*omega/(k_B*T) is the only parameter that decides
// the regime; it is invariant under change of unit system.

#include <string>
#include <string_view>

namespace qho {

namespace codata {

// CODATA 2018. h, c and k_B are exact by the 2019 SI definition.
inline constexpr double planck = 6.62607015e-34;          // J s
inline constexpr double speed_of_light = 299792458.0;     // m / s
inline constexpr double boltzmann = 1.380649e-23;         // J / K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double reduced_planck = planck / (2.0 * pi);  // J s
// h c / k_B, used for theta = c2 * wavenumber / T.
inline constexpr double second_radiation_constant = planck * speed_of_light / boltzmann;  // m K

inline constexpr double angstrom = 1e-10;    // m
inline constexpr double picosecond = 1e-12;  // s
inline constexpr double centimetre = 1e-2;   // m

}  // namespace codata

enum class UnitTag { Reduced, Molecular };

std::string_view to_string(UnitTag tag);

struct UnitSystem {
  UnitTag tag = UnitTag::Reduced;
  double hbar = 1.0;       // energy * time
  double boltzmann = 1.0;  // energy / temperature
  // Angular frequency per unit wavenumber (cm^-1), i.e. 2*pi*c in this
  // system's time unit. Zero in the reduced system.
  double angular_frequency_per_wavenumber = 0.0;
  std::string_view mass_unit = "reduced";
  std::string_view length_unit = "reduced";
  std::string_view time_unit = "reduced";
  std::string_view temperature_unit = "reduced";

  static UnitSystem reduced();
  static UnitSystem molecular();
};

bool operator==(const UnitSystem& a, const UnitSystem& b);

class OscillatorSpec {
 public:
  static OscillatorSpec from_spring_constant(double mass, double spring_constant,
                                             const UnitSystem& units = UnitSystem::reduced());
  static OscillatorSpec from_frequency(double mass, double frequency,
                                       const UnitSystem& units = UnitSystem::reduced());
  // Molecular units: mass in amu, vibrational wavenumber in cm^-1.
  static OscillatorSpec from_wavenumber(double mass_amu, double wavenumber_cm1);
  // Reduced units with omega = 1 and mass = alpha^2, so the width parameter is alpha.
  static OscillatorSpec reduced(double alpha = 1.0);

  double mass() const noexcept { return mass_; }
  double spring_constant() const noexcept { return spring_constant_; }
  double frequency() const noexcept { return frequency_; }
  // alpha = sqrt(m omega / hbar), an inverse length.
  double width_parameter() const noexcept { return width_parameter_; }
  // hbar * omega, the level spacing.
  double quantum() const noexcept { return units_.hbar * frequency_; }
  const UnitSystem& units() const noexcept { return units_; }

 private:
  OscillatorSpec(double mass, double spring_constant, double frequency, const UnitSystem& units);

  double mass_;
  double spring_constant_;
  double frequency_;
  double width_parameter_;
  UnitSystem units_;
};

// Canonical-ensemble temperature bound to one oscillator (theta needs omega).
// T = 0 is not representable; use the ground-state functions instead.
class ThermalSpec {
 public:
  static ThermalSpec from_temperature(double temperature, const OscillatorSpec& oscillator);
  static ThermalSpec from_beta(double beta, const OscillatorSpec& oscillator);
  static ThermalSpec from_coldness(double coldness, const OscillatorSpec& oscillator);

  double temperature() const noexcept { return temperature_; }
  double beta() const noexcept { return beta_; }
  // theta = beta * hbar * omega.
  double coldness() const noexcept { return coldness_; }
  double boltzmann() const noexcept { return boltzmann_; }

 private:
  ThermalSpec(double temperature, double beta, double coldness, double boltzmann)
      : temperature_(temperature), beta_(beta), coldness_(coldness), boltzmann_(boltzmann) {}

  double temperature_;
  double beta_;
  double coldness_;
  double boltzmann_;
};

// Scale factors that map reduced quantities back to the source system:
// physical = reduced * scale.
struct ReducedScales {
  double mass = 1.0;
  double length = 1.0;
  double time = 1.0;
  double energy = 1.0;
  double temperature = 1.0;
};

struct ReducedProblem {
  OscillatorSpec oscillator;
  ThermalSpec thermal;
  ReducedScales scales;
  UnitSystem source_units;
};

// Re-expresses a problem in reduced units with m = omega = hbar = k_B = 1.
// theta and alpha*x are preserved.
ReducedProblem to_reduced(const OscillatorSpec& oscillator, const ThermalSpec& thermal);

struct PhysicalProblem {
  OscillatorSpec oscillator;
  ThermalSpec thermal;
};

PhysicalProblem from_reduced(const ReducedProblem& problem);

// theta = (h c / k_B) * wavenumber / T, evaluated directly from SI constants.
double coldness_from_wavenumber(double wavenumber_cm1, double temperature_k);

// <x^2>_cl / <x^2>_0 = 2 k_B T / (hbar omega) = 2 / theta. Above 1 the thermal
// spread dominates, below 1 the zero-point spread does.
double quantumness_ratio(const OscillatorSpec& oscillator, const ThermalSpec& thermal);

}  // namespace qho
