#pragma once

// Brute-force evaluators that the closed forms are checked against.

#include <cstdint>
#include <functional>

#include "qho/quadrature.hpp"
#include "qho/units.hpp"

namespace qho {

struct TruncatedSumResult {
  double value = 0.0;
  // Highest quantum number included in the sum.
  std::int64_t n_used = 0;
  // Rigorous bound on the dropped terms: alpha * e^{-(n_used+1) theta}.
  double tail_bound = 0.0;
};

struct SumOptions {
  double tol = 1e-12;
  std::int64_t cap = 1'000'000;
};

// Thermal density as the Boltzmann-weighted sum of eigenstate densities,
//
//   P_T(x) = sum_n P_n |Psi_n(x)|^2,
//
// truncated once alpha * sum_{n > n_max} P_n < tol. Uses sup_x |Psi_n|^2 <= alpha,
// which holds because the normalized Hermite functions satisfy
// psi_n^2 <= 1.0865^2 / sqrt(pi) < 1. All terms come from a single forward
// recurrence at x.
//
// Throws ValidationError unless tol is in (0, 1e-3], and TruncationError
// (with the achievable tolerance) if the cap binds.
TruncatedSumResult thermal_density_by_sum(double x, const OscillatorSpec& oscillator, const ThermalSpec& thermal,
                                          const SumOptions& options = {});

using DensityFunction = std::function<double(double)>;

// integral_{-h}^{h} x^order p(x) dx by adaptive Simpson at abs_tol = 1e-12.
// order must be 0, 1, 2 or 4. Throws ConvergenceError with the best estimate
// attached if refinement fails.
double moment_by_quadrature(const DensityFunction& density, int order, double half_width,
                            const QuadratureOptions& options = {});

}  // namespace qho
