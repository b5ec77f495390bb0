#include "qho/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qho/errors.hpp"
#include "qho/thermal.hpp"

namespace qho {

namespace {

void require_count(std::int64_t n) {
  if (n < 1) throw ValidationError("n", "sample count must be at least 1");
}

SampleBatch gaussian_batch(std::int64_t n, double sigma, std::uint64_t seed, std::uint64_t stream, Regime regime) {
  require_count(n);
  NormalGenerator gen(seed, stream);
  SampleBatch batch{std::vector<double>(static_cast<std::size_t>(n)), seed, stream, regime};
  for (auto& v : batch.values) v = sigma * gen.standard_normal();
  return batch;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Quantum:
      return "quantum";
    case Regime::ClassicalCanonical:
      return "classical";
    case Regime::Microcanonical:
      return "microcanonical";
  }
  return "unknown";
}

Regime parse_regime(std::string_view name) {
  if (name == "quantum") return Regime::Quantum;
  if (name == "classical") return Regime::ClassicalCanonical;
  if (name == "microcanonical") return Regime::Microcanonical;
  throw ValidationError("regime", "unknown regime '" + std::string(name) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

NormalGenerator::NormalGenerator(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream))) {}

double NormalGenerator::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double NormalGenerator::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

SampleBatch sample_quantum_thermal(std::int64_t n, const OscillatorSpec& oscillator, const ThermalSpec& thermal,
                                   std::uint64_t seed, std::uint64_t stream) {
  return gaussian_batch(n, std::sqrt(variance(oscillator, thermal)), seed, stream, Regime::Quantum);
}

SampleBatch sample_classical_canonical(std::int64_t n, const OscillatorSpec& oscillator, const ThermalSpec& thermal,
                                       std::uint64_t seed, std::uint64_t stream) {
  return gaussian_batch(n, std::sqrt(variance_classical(oscillator, thermal)), seed, stream,
                        Regime::ClassicalCanonical);
}

SampleBatch sample_microcanonical(std::int64_t n, const ClassicalOrbit& orbit, std::uint64_t seed,
                                  std::uint64_t stream) {
  require_count(n);
  NormalGenerator gen(seed, stream);
  SampleBatch batch{std::vector<double>(static_cast<std::size_t>(n)), seed, stream, Regime::Microcanonical};
  const double a = orbit.amplitude();
  for (auto& v : batch.values) v = a * std::cos(2.0 * std::numbers::pi * gen.uniform());
  return batch;
}

SampleSummary summarize(const SampleBatch& batch, double expected_variance) {
  const auto& values = batch.values;
  if (values.size() < 2) throw ValidationError("batch", "need at least two samples");
  const auto n = static_cast<double>(values.size());

  // Welford for numerical stability at 1e7 draws.
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t k = 0;
  for (double x : values) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }

  SampleSummary s;
  s.count = k;
  s.mean = mean;
  s.variance = m2 / (n - 1.0);
  s.expected_variance = expected_variance;
  double variance_se = 0.0;
  if (batch.regime == Regime::Microcanonical) {
    // Var(x^2) = E[x^4] - E[x^2]^2 = 3A^4/8 - A^4/4 with A^2 = 2 <x^2>.
    variance_se = 2.0 * expected_variance / std::sqrt(8.0 * n);
  } else {
    variance_se = std::sqrt(2.0 / n) * expected_variance;
  }
  s.variance_band = 3.0 * variance_se;
  s.mean_band = 3.0 * std::sqrt(expected_variance / n);
  s.variance_within_band = std::abs(s.variance - expected_variance) <= s.variance_band;
  s.mean_within_band = std::abs(s.mean) <= s.mean_band;
  return s;
}

double ks_statistic_microcanonical(std::span<const double> values, const ClassicalOrbit& orbit) {
  if (values.empty()) throw ValidationError("values", "empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = microcanonical_cdf(sorted[i], orbit);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace qho
