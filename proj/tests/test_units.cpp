#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qho/errors.hpp"
#include "qho/presets.hpp"
#include "qho/thermal.hpp"
#include "qho/units.hpp"

using namespace qho;

namespace {

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE("oscillator constructors agree") {
  const auto from_k = OscillatorSpec::from_spring_constant(2.5, 7.0);
  const auto from_w = OscillatorSpec::from_frequency(2.5, from_k.frequency());
  CHECK(close_rel(from_w.spring_constant(), 7.0, 1e-14));
  CHECK(close_rel(from_k.width_parameter(), std::sqrt(2.5 * from_k.frequency()), 1e-15));

  const auto reduced = OscillatorSpec::reduced(3.0);
  CHECK(reduced.width_parameter() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(reduced.frequency() == 1.0);
}

TEST_CASE("invalid inputs are rejected with the field name") {
  CHECK_THROWS_AS(OscillatorSpec::from_frequency(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(OscillatorSpec::from_frequency(1.0, -1.0), ValidationError);
  CHECK_THROWS_AS(OscillatorSpec::from_spring_constant(1.0, std::numeric_limits<double>::infinity()),
                  ValidationError);
  CHECK_THROWS_AS(OscillatorSpec::from_wavenumber(1.0, std::nan("")), ValidationError);

  const auto osc = OscillatorSpec::reduced();
  try {
    (void)ThermalSpec::from_temperature(0.0, osc);
    FAIL("T = 0 must not construct");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "temperature");
  }
  CHECK_THROWS_AS(ThermalSpec::from_coldness(-1.0, osc), ValidationError);
  CHECK_THROWS_AS(ThermalSpec::from_beta(std::numeric_limits<double>::infinity(), osc), ValidationError);
}

TEST_CASE("reduced inputs pass through to_reduced unchanged") {
  const auto osc = OscillatorSpec::from_frequency(1.0, 1.0);
  const auto th = ThermalSpec::from_coldness(1.0, osc);
  const auto r = to_reduced(osc, th);
  CHECK(r.oscillator.mass() == 1.0);
  CHECK(r.oscillator.frequency() == 1.0);
  CHECK(r.oscillator.width_parameter() == 1.0);
  CHECK(r.thermal.coldness() == 1.0);
  CHECK(r.thermal.temperature() == 1.0);
  CHECK(r.scales.length == 1.0);
  CHECK(r.scales.energy == 1.0);
}

TEST_CASE("molecular round trip preserves every quantity") {
  const auto osc = OscillatorSpec::from_wavenumber(12.0, 1000.0);
  const auto th = ThermalSpec::from_temperature(300.0, osc);
  const auto reduced = to_reduced(osc, th);
  CHECK(close_rel(reduced.thermal.coldness(), th.coldness(), 1e-12));

  const auto back = from_reduced(reduced);
  CHECK(back.oscillator.units() == UnitSystem::molecular());
  CHECK(close_rel(back.oscillator.mass(), 12.0, 1e-12));
  CHECK(close_rel(back.oscillator.frequency(), osc.frequency(), 1e-12));
  CHECK(close_rel(back.oscillator.spring_constant(), osc.spring_constant(), 1e-12));
  CHECK(close_rel(back.oscillator.width_parameter(), osc.width_parameter(), 1e-12));
  CHECK(close_rel(back.thermal.temperature(), 300.0, 1e-12));
  CHECK(close_rel(back.thermal.beta(), th.beta(), 1e-12));
  CHECK(close_rel(back.thermal.coldness(), th.coldness(), 1e-12));
}

TEST_CASE("alpha x and theta are unit invariant") {
  const auto osc = OscillatorSpec::from_wavenumber(0.929854, 2900.0);
  const auto th = ThermalSpec::from_temperature(310.0, osc);
  const auto r = to_reduced(osc, th);
  const double x_angstrom = 0.07;
  const double x_reduced = x_angstrom / r.scales.length;
  CHECK(close_rel(r.oscillator.width_parameter() * x_reduced, osc.width_parameter() * x_angstrom, 1e-13));
  // Densities transform as 1/length.
  CHECK(close_rel(thermal_density(x_reduced, r.oscillator, r.thermal) / r.scales.length,
                  thermal_density(x_angstrom, osc, th), 1e-12));
  CHECK(close_rel(variance(r.oscillator, r.thermal) * r.scales.length * r.scales.length, variance(osc, th), 1e-12));
}

TEST_CASE("theta from wavenumber matches an independent constant evaluation") {
  // h c (3000 cm^-1) / (k_B 300 K) with CODATA 2018, evaluated at 40 digits.
  constexpr double expected = 14.387768775039338;
  CHECK(close_rel(coldness_from_wavenumber(3000.0, 300.0), expected, 1e-14));

  const auto osc = OscillatorSpec::from_wavenumber(1.0, 3000.0);
  const auto th = ThermalSpec::from_temperature(300.0, osc);
  CHECK(close_rel(th.coldness(), expected, 1e-12));
}

TEST_CASE("theta computed two ways agrees over random molecular inputs") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> log_wn(std::log(50.0), std::log(4500.0));
  std::uniform_real_distribution<double> log_t(std::log(1.0), std::log(5000.0));
  std::uniform_real_distribution<double> mass(0.5, 60.0);
  for (int i = 0; i < 500; ++i) {
    const double wn = std::exp(log_wn(rng));
    const double t = std::exp(log_t(rng));
    const auto osc = OscillatorSpec::from_wavenumber(mass(rng), wn);
    const auto th = ThermalSpec::from_temperature(t, osc);
    CHECK(close_rel(th.coldness(), coldness_from_wavenumber(wn, t), 1e-12));
    CHECK(close_rel(to_reduced(osc, th).thermal.coldness(), th.coldness(), 1e-12));
  }
}

TEST_CASE("quantumness ratio") {
  const auto osc = OscillatorSpec::reduced();
  CHECK(quantumness_ratio(osc, ThermalSpec::from_coldness(2.0, osc)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quantumness_ratio(osc, ThermalSpec::from_coldness(0.2, osc)) == doctest::Approx(10.0).epsilon(1e-14));

  for (double alpha : {0.5, 1.0, 3.0}) {
    const auto o = OscillatorSpec::reduced(alpha);
    for (double theta : {0.1, 1.0, 10.0}) {
      const auto th = ThermalSpec::from_coldness(theta, o);
      const double ratio = quantumness_ratio(o, th);
      CHECK(close_rel(ratio, variance_classical(o, th) / variance_ground(o), 1e-12));
      CHECK(close_rel(ratio * theta, 2.0, 1e-14));
    }
  }

  const auto mol = OscillatorSpec::from_wavenumber(1.0, 3000.0);
  const auto th = ThermalSpec::from_temperature(300.0, mol);
  CHECK(close_rel(quantumness_ratio(mol, th) * th.coldness(), 2.0, 1e-14));
}

TEST_CASE("preset parsing") {
  std::istringstream in(R"(
# bond presets
bond.CH = {0.9299, 2900}
bond.OH = {wavenumber_cm1 = 3650, mass_amu = 0.9481}   # named, any order
bond.X  = 2.0, 100
)");
  const auto table = parse_presets(in);
  REQUIRE(table.size() == 3);
  CHECK(table.at("bond.CH").mass_amu == 0.9299);
  CHECK(table.at("bond.OH").wavenumber_cm1 == 3650.0);
  CHECK(table.at("bond.X").mass_amu == 2.0);

  std::istringstream bad_value("bond.CH = {abc, 2900}");
  CHECK_THROWS_AS(parse_presets(bad_value), ValidationError);
  std::istringstream negative("bond.CH = {-1, 2900}");
  CHECK_THROWS_AS(parse_presets(negative), ValidationError);
  std::istringstream one_value("bond.CH = {1}");
  CHECK_THROWS_AS(parse_presets(one_value), ValidationError);

  CHECK(builtin_presets().count("bond.CH") == 1);
}
