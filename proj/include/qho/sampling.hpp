#pragma once

// Exact samplers for the three position distributions, plus the summary
// statistics used to check them against their closed-form variances.
//
// Generator: std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(stream)).
// Uniforms take the top 53 bits of each draw; normals use Marsaglia's polar
// method. None of this depends on implementation-defined std distributions,
// so batches are bit-identical across standard libraries.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "qho/classical.hpp"
#include "qho/units.hpp"

namespace qho {

enum class Regime { Quantum, ClassicalCanonical, Microcanonical };

std::string_view to_string(Regime regime);
// Accepts "quantum", "classical", "microcanonical". Throws ValidationError.
Regime parse_regime(std::string_view name);

std::uint64_t splitmix64(std::uint64_t x);

class NormalGenerator {
 public:
  NormalGenerator(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform on [0, 1).
  double uniform();
  double standard_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  Regime regime = Regime::Quantum;
};

// Normal with mean 0 and the thermal variance (hbar/2 m omega) coth(theta/2).
SampleBatch sample_quantum_thermal(std::int64_t n, const OscillatorSpec& oscillator, const ThermalSpec& thermal,
                                   std::uint64_t seed, std::uint64_t stream = 0);
// Normal with mean 0 and variance k_B T / (m omega^2).
SampleBatch sample_classical_canonical(std::int64_t n, const OscillatorSpec& oscillator, const ThermalSpec& thermal,
                                       std::uint64_t seed, std::uint64_t stream = 0);
// x = A cos(phi), phi uniform on [0, 2 pi).
SampleBatch sample_microcanonical(std::int64_t n, const ClassicalOrbit& orbit, std::uint64_t seed,
                                  std::uint64_t stream = 0);

// Quantum and classical-canonical batches with equal (seed, stream) scale the
// same standard-normal stream, so their ratio isolates the variance law.

struct SampleSummary {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // second central moment with 1/(n-1)
  double expected_variance = 0.0;
  // Three standard errors of the sample variance around the expected value.
  double variance_band = 0.0;
  // Three standard errors of the mean around zero.
  double mean_band = 0.0;
  bool variance_within_band = false;
  bool mean_within_band = false;
};

// Gaussian regimes: SE(var) = sqrt(2/n) sigma^2. Microcanonical: Var(x^2) =
// A^4/8, so SE(var) = A^2 / sqrt(8 n).
SampleSummary summarize(const SampleBatch& batch, double expected_variance);

// Two-sided Kolmogorov-Smirnov distance between the batch and the arcsine law.
double ks_statistic_microcanonical(std::span<const double> values, const ClassicalOrbit& orbit);

}  // namespace qho
