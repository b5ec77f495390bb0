#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qho/classical.hpp"
#include "qho/errors.hpp"
#include "qho/oracle.hpp"
#include "qho/quadrature.hpp"
#include "qho/thermal.hpp"

using namespace qho;

TEST_CASE("orbit invariants") {
  const auto osc = OscillatorSpec::from_spring_constant(2.0, 5.0);
  const auto orbit = ClassicalOrbit::from_amplitude(1.7, osc);
  CHECK(orbit.energy() == doctest::Approx(0.5 * 5.0 * 1.7 * 1.7).epsilon(1e-15));
  const auto back = ClassicalOrbit::from_energy(orbit.energy(), osc);
  CHECK(std::abs(back.amplitude() - 1.7) <= 1e-14 * 1.7);
  CHECK(std::abs(orbit.period() * osc.frequency() - 2.0 * std::numbers::pi) <= 1e-14 * 2.0 * std::numbers::pi);
  CHECK_THROWS_AS(ClassicalOrbit::from_amplitude(0.0, osc), ValidationError);
  CHECK_THROWS_AS(ClassicalOrbit::from_energy(-1.0, osc), ValidationError);
}

TEST_CASE("trajectory") {
  const auto osc = OscillatorSpec::from_spring_constant(1.0, 4.0);
  const auto orbit = ClassicalOrbit::from_amplitude(2.0, osc);
  CHECK(trajectory(0.0, orbit, osc) == 2.0);
  CHECK(trajectory(0.5 * orbit.period(), orbit, osc) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(std::abs(trajectory(0.25 * orbit.period(), orbit, osc)) <= 2.0 * 1e-15);
}

TEST_CASE("microcanonical density") {
  const auto osc = OscillatorSpec::reduced();
  const auto orbit = ClassicalOrbit::from_amplitude(1.0, osc);
  CHECK(microcanonical_density(0.0, orbit) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
  // 1/(0.8 pi)
  CHECK(microcanonical_density(0.6, orbit) == doctest::Approx(0.3978873577297384).epsilon(1e-15));
  CHECK_THROWS_AS(microcanonical_density(1.0, orbit), DomainError);
  CHECK_THROWS_AS(microcanonical_density(-1.5, orbit), DomainError);

  // Even and strictly increasing in |x|.
  double previous = 0.0;
  for (int i = 0; i < 999; ++i) {
    const double x = i / 1000.0;
    const double p = microcanonical_density(x, orbit);
    CHECK(p == microcanonical_density(-x, orbit));
    CHECK(p > previous);
    previous = p;
  }

  // x = A sin u turns the integral into integral du / pi over (-pi/2, pi/2).
  const auto big = ClassicalOrbit::from_amplitude(3.0, osc);
  const double total = integrate(
      [&](double u) {
        const double x = big.amplitude() * std::sin(u);
        return microcanonical_density(x, big) * big.amplitude() * std::cos(u);
      },
      -0.5 * std::numbers::pi + 1e-3, 0.5 * std::numbers::pi - 1e-3).value;
  // Analytic edge correction for the two excluded 1e-3 slivers in u.
  CHECK(std::abs(total + 2e-3 / std::numbers::pi - 1.0) < 1e-12);

  CHECK(microcanonical_cdf(-5.0, big) == 0.0);
  CHECK(microcanonical_cdf(0.0, big) == 0.5);
  CHECK(microcanonical_cdf(5.0, big) == 1.0);
}

TEST_CASE("canonical energy average reproduces the Boltzmann Gaussian") {
  const auto unit = OscillatorSpec::reduced(1.0);
  // beta k = 2 pi
  CHECK(std::abs(canonical_classical_density(0.0, unit, ThermalSpec::from_coldness(2.0 * std::numbers::pi, unit)) -
                 1.0) < 1e-8);

  for (double theta : {0.5, 1.0, 2.0}) {
    for (double alpha : {0.5, 1.0, 3.0}) {
      const auto osc = OscillatorSpec::reduced(alpha);
      const auto th = ThermalSpec::from_coldness(theta, osc);
      const double s = std::sqrt(variance(osc, th));
      double worst = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double x = -6.0 * s + 12.0 * s * i / 100.0;
        worst = std::max(worst, std::abs(canonical_classical_density(x, osc, th) - classical_density(x, osc, th)));
      }
      CAPTURE(theta);
      CAPTURE(alpha);
      CHECK(worst < 1e-8);
    }
  }

  const auto th = ThermalSpec::from_coldness(1.0, unit);
  const double norm =
      moment_by_quadrature([&](double x) { return canonical_classical_density(x, unit, th); }, 0, 12.0);
  CHECK(std::abs(norm - 1.0) < 1e-8);

  // Non-reduced constants: the identity does not depend on the unit system.
  const auto mol = OscillatorSpec::from_wavenumber(6.86, 1700.0);
  const auto room = ThermalSpec::from_temperature(300.0, mol);
  for (double x : {0.0, 0.02, -0.05}) {
    const double exact = classical_density(x, mol, room);
    CHECK(std::abs(canonical_classical_density(x, mol, room) - exact) <= 1e-10 * exact + 1e-12);
  }
}

TEST_CASE("velocity Verlet") {
  const auto osc = OscillatorSpec::from_spring_constant(1.3, 2.1);
  const auto orbit = ClassicalOrbit::from_amplitude(0.8, osc);
  const double dt = orbit.period() / 1000.0;

  SUBCASE("time reversal") {
    PhaseState state{orbit.amplitude(), 0.0};
    integrate_verlet(state, osc, dt, 100'000);
    integrate_verlet(state, osc, -dt, 100'000);
    CHECK(std::abs(state.position - orbit.amplitude()) < 1e-9 * orbit.amplitude());
    CHECK(std::abs(state.velocity) < 1e-9 * orbit.amplitude() * osc.frequency());
  }

  SUBCASE("shadow energy is conserved, plain energy is bounded") {
    PhaseState state{orbit.amplitude(), 0.0};
    const double h0 = shadow_energy(state, osc, dt);
    const double e0 = mechanical_energy(state, osc);
    const double wdt = osc.frequency() * dt;
    double worst = 0.0;
    for (int block = 0; block < 1000; ++block) {
      integrate_verlet(state, osc, dt, 137);
      CHECK(std::abs(shadow_energy(state, osc, dt) - h0) < 1e-12 * h0);
      worst = std::max(worst, std::abs(mechanical_energy(state, osc) - e0) / e0);
    }
    CHECK(worst <= 1.01 * 0.25 * wdt * wdt / (1.0 - 0.25 * wdt * wdt));
  }

  SUBCASE("energy after 1e6 steps at period/1000") {
    PhaseState state{orbit.amplitude(), 0.0};
    integrate_verlet(state, osc, dt, 1'000'000);
    CHECK(std::abs(mechanical_energy(state, osc) - orbit.energy()) < 1e-6 * orbit.energy());
  }
}

TEST_CASE("trajectory histogram") {
  const auto osc = OscillatorSpec::reduced(1.0);
  const auto orbit = ClassicalOrbit::from_amplitude(1.0, osc);
  const double dt = orbit.period() / 1000.0;

  const auto h = simulate_histogram(orbit, osc, dt, 10'000'000, 50);
  std::int64_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == h.total_steps);
  CHECK(h.bin_edges.front() == -1.0);
  CHECK(h.bin_edges.back() == 1.0);
  CHECK(h.dt == h.requested_dt);
  CHECK(h.energy_drift < 1e-6);
  CHECK(h.final_energy_error < 1e-6);
  CHECK(histogram_max_relative_deviation(h, orbit, 2) < 0.02);
  CHECK(histogram_asymmetry(h) < 0.01);

  SUBCASE("low-order resonance is nudged away") {
    // omega~ dt = 2 pi / 25 exactly: every 25 steps repeat the same phases.
    const double wdt = 2.0 * std::numbers::pi / 25.0;
    const double resonant = std::sqrt(2.0 * (1.0 - std::cos(wdt)));
    const auto r = simulate_histogram(orbit, osc, resonant, 200'000, 20);
    CHECK(r.dt != r.requested_dt);
    CHECK(std::abs(r.dt / r.requested_dt - 1.0) < 1e-2);
    CHECK(histogram_max_relative_deviation(r, orbit, 2) < 0.05);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(simulate_histogram(orbit, osc, orbit.period() / 10.0, 100'000, 50), ValidationError);
    CHECK_THROWS_AS(simulate_histogram(orbit, osc, dt, 0, 50), ValidationError);
    CHECK_THROWS_AS(simulate_histogram(orbit, osc, dt, 99'999, 50), ValidationError);
    CHECK_THROWS_AS(simulate_histogram(orbit, osc, dt, 100'000, 19), ValidationError);
    CHECK_THROWS_AS(simulate_histogram(orbit, osc, -dt, 100'000, 50), ValidationError);
  }
}
