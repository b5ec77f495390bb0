#pragma once

// Harmonic-oscillator eigenvalues and eigenstate position densities.

#include <cmath>
#include <cstdint>

#include "qho/units.hpp"

namespace qho {

struct EigenLevel {
  std::int64_t n = 0;
  double energy = 0.0;
};

// E_n = hbar omega (n + 1/2). Negative n throws ValidationError.
double energy(std::int64_t n, const OscillatorSpec& oscillator);
EigenLevel level(std::int64_t n, const OscillatorSpec& oscillator);

// Physicists' Hermite polynomial H_n(y) by the three-term recurrence.
// Only meant for small n; throws OverflowError once the value leaves the
// double range (use hermite_function instead).
double hermite(std::int64_t n, double y);

// Normalized Hermite function psi_n(y) = H_n(y) exp(-y^2/2) / sqrt(2^n n! sqrt(pi)).
// Signed; sum over y of psi_n^2 integrates to 1.
double hermite_function(std::int64_t n, double y);

// |Psi_n(x)|^2 = alpha * psi_n(alpha x)^2. Finite for n up to 1e4 and beyond,
// |alpha x| up to 100 and beyond; values below the double range flush to 0.
double eigen_density(std::int64_t n, double x, const OscillatorSpec& oscillator);

// Forward recurrence over n for the normalized Hermite functions at a fixed y:
//
//   psi_{n+1} = y sqrt(2/(n+1)) psi_n - sqrt(n/(n+1)) psi_{n-1}
//
// The Gaussian factor is held separately as a log scale and the running pair
// is renormalized whenever it grows large, so neither exp(-y^2/2) underflow
// nor polynomial growth can break the sweep.
class HermiteFunctionSweep {
 public:
  explicit HermiteFunctionSweep(double y);

  std::int64_t index() const noexcept { return n_; }
  // psi_n(y) for the current index.
  double value() const;
  // psi_n(y)^2, evaluated without forming an overflowing intermediate.
  double square() const;
  void advance();

 private:
  double y_;
  std::int64_t n_ = 0;
  double previous_ = 0.0;
  double current_;
  double log_scale_;
};

}  // namespace qho
