#include "qho/oracle.hpp"

#include <cmath>

#include "qho/eigensystem.hpp"
#include "qho/errors.hpp"
#include "qho/thermal.hpp"

namespace qho {

TruncatedSumResult thermal_density_by_sum(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal,
                                          const SumOptions& options) {
  detail::require_finite(x, "x");
  if (!(options.tol > 0.0 && options.tol <= 1e-3)) throw ValidationError("tol", "must lie in (0, 1e-3]");
  if (options.cap < 0) throw ValidationError("cap", "must be non-negative");

  const double theta = thermal.coldness();
  const double alpha = oscillator.width_parameter();
  const std::int64_t n_max = truncation_index(theta, options.tol, alpha, options.cap);

  HermiteFunctionSweep sweep(alpha * x);
  double sum = 0.0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    sum += occupation(theta, n) * sweep.square();
    sweep.advance();
  }
  return {alpha * sum, n_max, alpha * std::exp(-static_cast<double>(n_max + 1) * theta)};
}

double moment_by_quadrature(const DensityFunction& density, int order, double half_width,
                            const QuadratureOptions& options) {
  if (order != 0 && order != 1 && order != 2 && order != 4) {
    throw ValidationError("order", "must be one of 0, 1, 2, 4");
  }
  detail::require_positive_finite(half_width, "half_width");
  const auto integrand = [&](double x) {
    const double p = density(x);
    switch (order) {
      case 0:
        return p;
      case 1:
        return x * p;
      case 2:
        return x * x * p;
      default:
        return x * x * x * x * p;
    }
  };
  return integrate(integrand, -half_width, half_width, options).value;
}

}  // namespace qho
