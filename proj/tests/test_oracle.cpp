#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "qho/eigensystem.hpp"
#include "qho/errors.hpp"
#include "qho/oracle.hpp"
#include "qho/thermal.hpp"

using namespace qho;

TEST_CASE("frozen ensemble keeps only the ground state") {
  for (double alpha : {0.5, 2.0}) {
    const auto osc = OscillatorSpec::reduced(alpha);
    const auto th = ThermalSpec::from_coldness(60.0, osc);
    for (double x : {0.0, 0.3, -1.1, 2.0}) {
      const auto r = thermal_density_by_sum(x / alpha, osc, th);
      CHECK(std::abs(r.value - eigen_density(0, x / alpha, osc)) < 1e-12);
      CHECK(r.n_used == 0);
    }
  }
}

TEST_CASE("sum reproduces the closed form at the origin") {
  const auto osc = OscillatorSpec::reduced(1.0);
  const auto th = ThermalSpec::from_coldness(1.0, osc);
  const auto r = thermal_density_by_sum(0.0, osc, th);
  // (1/sqrt(pi)) sqrt(tanh(1/2)) at 40 digits.
  CHECK(std::abs(r.value - 0.3835315628876072) < 1e-13);
  CHECK(r.tail_bound < 1e-12);
  CHECK(r.n_used == 27);  // e^{-28} < 1e-12 <= e^{-27}
}

TEST_CASE("sum matches the closed form on a grid") {
  const auto osc = OscillatorSpec::reduced(1.0);
  const auto th = ThermalSpec::from_coldness(0.2, osc);
  const double s = std::sqrt(variance(osc, th));
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = -6.0 * s + 12.0 * s * i / 100.0;
    worst = std::max(worst, std::abs(thermal_density_by_sum(x, osc, th).value - thermal_density(x, osc, th)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("tail bound is honest") {
  for (double theta : {0.1, 0.7, 3.0}) {
    for (double alpha : {0.5, 3.0}) {
      const auto osc = OscillatorSpec::reduced(alpha);
      const auto th = ThermalSpec::from_coldness(theta, osc);
      for (double tol : {1e-3, 1e-6}) {
        for (double y : {0.0, 0.8, 2.5}) {
          const auto coarse = thermal_density_by_sum(y / alpha, osc, th, {tol, 1'000'000});
          // Doubling the number of kept levels.
          const double tighter_tol = alpha * std::exp(-2.0 * (coarse.n_used + 1) * theta);
          const auto fine = thermal_density_by_sum(y / alpha, osc, th, {std::max(tighter_tol, 1e-300), 1'000'000});
          REQUIRE(fine.n_used >= 2 * coarse.n_used);
          CHECK(std::abs(fine.value - coarse.value) <= coarse.tail_bound);
          CHECK(coarse.tail_bound < tol);
        }
      }
    }
  }
}

TEST_CASE("invalid tolerances and the level cap") {
  const auto osc = OscillatorSpec::reduced(1.0);
  const auto th = ThermalSpec::from_coldness(1.0, osc);
  CHECK_THROWS_AS(thermal_density_by_sum(0.0, osc, th, {0.0, 100}), ValidationError);
  CHECK_THROWS_AS(thermal_density_by_sum(0.0, osc, th, {1e-2, 100}), ValidationError);

  const auto hot = ThermalSpec::from_coldness(1e-4, osc);
  try {
    (void)thermal_density_by_sum(0.0, osc, hot, {1e-12, 1000});
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.achievable_tolerance() == doctest::Approx(std::exp(-1001e-4)));
  }
}

TEST_CASE("moments by quadrature") {
  const auto osc = OscillatorSpec::reduced(1.0);
  const auto th = ThermalSpec::from_coldness(2.0, osc);
  const auto p = [&](double x) { return thermal_density(x, osc, th); };
  CHECK(std::abs(moment_by_quadrature(p, 0, 12.0) - 1.0) < 1e-10);
  CHECK(std::abs(moment_by_quadrature(p, 1, 12.0)) < 1e-12);
  // 0.5 coth(1).
  CHECK(std::abs(moment_by_quadrature(p, 2, 12.0) - 0.6565176427496657) < 1e-9);
  // Gaussian fourth moment 3 sigma^4.
  const double v = variance(osc, th);
  CHECK(moment_by_quadrature(p, 4, 14.0) == doctest::Approx(3.0 * v * v).epsilon(1e-10));

  const auto skewed = [](double x) { return x > 0 ? std::exp(-x) : 0.0; };
  CHECK(std::abs(moment_by_quadrature(skewed, 1, 60.0) - 1.0) < 1e-9);

  CHECK_THROWS_AS(moment_by_quadrature(p, 3, 10.0), ValidationError);
  CHECK_THROWS_AS(moment_by_quadrature(p, 2, -1.0), ValidationError);

  QuadratureOptions tight;
  tight.max_depth = 2;
  tight.initial_panels = 1;
  tight.abs_tol = 1e-15;
  try {
    (void)moment_by_quadrature(p, 2, 12.0, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_estimate() > 0.0);
  }
}
