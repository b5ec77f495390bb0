#include "qho/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "qho/classical.hpp"
#include "qho/errors.hpp"
#include "qho/oracle.hpp"
#include "qho/presets.hpp"
#include "qho/sampling.hpp"
#include "qho/thermal.hpp"
#include "qho/units.hpp"

namespace qho::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCommands = {"density", "variance-table", "classical-sim", "sample", "oracle-check"};

// ---------------------------------------------------------------------------
// Output tables

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      c);
}

ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      c);
}

std::string summary_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

// One output file: config echo, summary lines, then the table.
struct Output {
  std::string stem;
  ordered_json summary = ordered_json::object();
  Table table;
  bool passed = true;
};

void write_output(const RunConfig& config, const Output& output, std::ostream& report) {
  std::filesystem::create_directories(config.out);
  const bool json = config.format == "json";
  const std::filesystem::path path = std::filesystem::path(config.out) / (output.stem + (json ? ".json" : ".csv"));
  std::ofstream f(path);
  if (!f) throw ValidationError("out", "cannot write '" + path.string() + "'");

  if (json) {
    ordered_json doc;
    doc["command"] = config.command;
    doc["config"] = to_json(config);
    doc["summary"] = output.summary;
    doc["columns"] = output.table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : output.table.rows) {
      ordered_json r = ordered_json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    f << doc.dump(1) << '\n';
  } else {
    f << "# qho " << config.command << '\n';
    f << "# config: " << to_json(config).dump() << '\n';
    for (const auto& [key, value] : output.summary.items()) f << "# " << key << ": " << summary_text(value) << '\n';
    for (std::size_t i = 0; i < output.table.columns.size(); ++i) {
      f << (i ? "," : "") << output.table.columns[i];
    }
    f << '\n';
    for (const auto& row : output.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << cell_text(row[i]);
      f << '\n';
    }
  }

  report << path.string() << ":";
  for (const auto& [key, value] : output.summary.items()) {
    if (key == "point") continue;
    report << ' ' << key << '=' << summary_text(value);
  }
  report << '\n';
}

// ---------------------------------------------------------------------------
// Problem setup

bool is_molecular(const RunConfig& c) { return c.mass_amu || c.wavenumber_cm1 || !c.preset.empty(); }

std::vector<OscillatorSpec> oscillators(const RunConfig& c) {
  if (is_molecular(c)) return {OscillatorSpec::from_wavenumber(*c.mass_amu, *c.wavenumber_cm1)};
  std::vector<OscillatorSpec> out;
  for (double alpha : c.alphas) out.push_back(OscillatorSpec::reduced(alpha));
  return out;
}

struct Point {
  std::size_t index = 0;
  OscillatorSpec oscillator;
  ThermalSpec thermal;
  ReducedProblem reduced;
};

std::vector<Point> points(const RunConfig& c) {
  std::vector<Point> out;
  for (const auto& osc : oscillators(c)) {
    std::vector<ThermalSpec> temps;
    for (double t : c.temperatures_k) temps.push_back(ThermalSpec::from_temperature(t, osc));
    for (double theta : c.thetas) temps.push_back(ThermalSpec::from_coldness(theta, osc));
    for (const auto& th : temps) out.push_back(Point{out.size(), osc, th, to_reduced(osc, th)});
  }
  return out;
}

ordered_json describe(const Point& p) {
  const UnitSystem& u = p.oscillator.units();
  ordered_json d;
  d["units"] = std::string(to_string(u.tag));
  d["length_unit"] = std::string(u.length_unit);
  d["alpha"] = p.oscillator.width_parameter();
  d["theta"] = p.thermal.coldness();
  d["temperature"] = p.thermal.temperature();
  d["temperature_unit"] = std::string(u.temperature_unit);
  return d;
}

// Evaluates `work` for every item, in parallel when there is more than one,
// and returns results in input order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F work) {
  using R = std::invoke_result_t<F, const T&>;
  std::vector<std::future<R>> futures;
  futures.reserve(items.size());
  const auto policy = items.size() > 1 ? std::launch::async : std::launch::deferred;
  for (const auto& item : items) futures.push_back(std::async(policy, work, std::cref(item)));
  std::vector<R> results;
  results.reserve(items.size());
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------------------
// Commands

Output density_for(const RunConfig& c, const Point& p) {
  const auto& osc = p.reduced.oscillator;
  const auto& th = p.reduced.thermal;
  const double length = p.reduced.scales.length;
  const double sigma = std::sqrt(variance(osc, th));
  const double half = c.half_width_sigmas * sigma;

  Output out;
  out.stem = "density_" + std::to_string(p.index);
  out.table.columns = {"x", "P_T", "P_ground", "P_classical"};
  if (c.oracle) {
    out.table.columns.push_back("P_oracle_sum");
    out.table.columns.push_back("tail_bound");
  }

  double trapezoid = 0.0;
  double previous_x = 0.0;
  double previous_p = 0.0;
  double max_dev = 0.0;
  double max_tail = 0.0;
  std::int64_t max_n = 0;
  for (int i = 0; i < c.grid; ++i) {
    const double xr = -half + 2.0 * half * i / (c.grid - 1);
    const double x = xr * length;
    const double pt = thermal_density(xr, osc, th) / length;
    Row row{x, pt, ground_density(xr, osc) / length, classical_density(xr, osc, th) / length};
    if (c.oracle) {
      const auto sum = thermal_density_by_sum(xr, osc, th, {c.tol, OccupationWeights::kDefaultCap});
      const double ps = sum.value / length;
      row.emplace_back(ps);
      row.emplace_back(sum.tail_bound / length);
      max_dev = std::max(max_dev, std::abs(ps - pt));
      max_tail = std::max(max_tail, sum.tail_bound / length);
      max_n = std::max(max_n, sum.n_used);
    }
    if (i > 0) trapezoid += 0.5 * (x - previous_x) * (pt + previous_p);
    previous_x = x;
    previous_p = pt;
    out.table.rows.push_back(std::move(row));
  }

  const bool norm_ok = std::abs(trapezoid - 1.0) <= c.normalization_tol;
  out.summary["point"] = describe(p);
  out.summary["sigma"] = sigma * length;
  out.summary["normalization_trapezoid"] = trapezoid;
  out.summary["normalization_check"] = verdict(norm_ok);
  out.passed = norm_ok;
  if (c.oracle) {
    const bool oracle_ok = max_dev < c.max_deviation;
    out.summary["oracle_max_deviation"] = max_dev;
    out.summary["oracle_threshold"] = c.max_deviation;
    out.summary["oracle_max_n_used"] = max_n;
    out.summary["oracle_max_tail_bound"] = max_tail;
    out.summary["oracle_check"] = verdict(oracle_ok);
    out.passed = out.passed && oracle_ok;
  }
  out.summary["status"] = verdict(out.passed);
  return out;
}

std::vector<Output> cmd_density(const RunConfig& c) {
  return parallel_map(points(c), [&](const Point& p) { return density_for(c, p); });
}

std::vector<Output> cmd_variance_table(const RunConfig& c) {
  Output out;
  out.stem = "variance_table";
  out.table.columns = {"T", "theta", "x2", "x2_ground", "x2_classical", "ratio", "regime"};
  int violations = 0;
  double worst_ratio = 0.0;
  for (const auto& p : points(c)) {
    const double l2 = p.reduced.scales.length * p.reduced.scales.length;
    const auto d = decompose_variance(p.reduced.oscillator, p.reduced.thermal);
    const double ratio = quantumness_ratio(p.oscillator, p.thermal);
    const double theta = p.thermal.coldness();
    const double x2 = d.total * l2;
    const double ground = d.ground * l2;
    const double classical = d.classical * l2;
    if (!(x2 >= std::max(ground, classical))) ++violations;
    worst_ratio = std::max(worst_ratio, std::abs(ratio * theta / 2.0 - 1.0));
    out.table.rows.push_back(Row{p.thermal.temperature(), theta, x2, ground, classical, ratio,
                                 std::string(ratio < 1.0 ? "quantum-dominated" : "thermal-dominated")});
  }
  const bool ratio_ok = worst_ratio <= 1e-12;
  const auto first = oscillators(c).front();
  out.summary["units"] = std::string(to_string(first.units().tag));
  out.summary["length_unit"] = std::string(first.units().length_unit);
  out.summary["alpha"] = first.width_parameter();
  out.summary["inequality_violations"] = violations;
  out.summary["ratio_max_rel_error"] = worst_ratio;
  out.passed = violations == 0 && ratio_ok;
  out.summary["status"] = verdict(out.passed);
  return {out};
}

std::vector<Output> cmd_classical_sim(const RunConfig& c) {
  const auto osc = oscillators(c).front();
  // Reduced oscillator: m = omega = hbar = 1.
  const auto unit = OscillatorSpec::from_frequency(1.0, 1.0);
  const double length = 1.0 / osc.width_parameter();
  const double time = 1.0 / osc.frequency();
  const auto orbit = ClassicalOrbit::from_amplitude(c.amplitude / length, unit);
  const double dt = orbit.period() / c.steps_per_period;
  const auto h = simulate_histogram(orbit, unit, dt, c.steps, c.bins);

  Output out;
  out.stem = "classical_sim";
  out.table.columns = {"bin_lo", "bin_hi", "count", "density_empirical", "density_analytic", "rel_deviation",
                       "interior"};
  const int bins = static_cast<int>(h.counts.size());
  for (int i = 0; i < bins; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double lo = h.bin_edges[k];
    const double hi = h.bin_edges[k + 1];
    const double empirical = static_cast<double>(h.counts[k]) / (static_cast<double>(h.total_steps) * (hi - lo));
    const double analytic = microcanonical_bin_average(lo, hi, orbit);
    const bool interior = i >= c.excluded_edge_bins && i < bins - c.excluded_edge_bins;
    out.table.rows.push_back(Row{lo * length, hi * length, h.counts[k], empirical / length, analytic / length,
                                 empirical / analytic - 1.0, std::int64_t{interior ? 1 : 0}});
  }

  const double deviation = histogram_max_relative_deviation(h, orbit, c.excluded_edge_bins);
  const bool hist_ok = deviation < c.max_histogram_deviation;
  const bool drift_ok = h.energy_drift < c.max_energy_drift;
  out.summary["units"] = std::string(to_string(osc.units().tag));
  out.summary["amplitude"] = c.amplitude;
  out.summary["period"] = orbit.period() * time;
  out.summary["requested_dt"] = h.requested_dt * time;
  out.summary["dt"] = h.dt * time;
  out.summary["steps"] = h.total_steps;
  out.summary["max_interior_deviation"] = deviation;
  out.summary["histogram_check"] = verdict(hist_ok);
  out.summary["energy_drift"] = h.energy_drift;
  out.summary["energy_check"] = verdict(drift_ok);
  out.summary["max_energy_fluctuation"] = h.max_energy_fluctuation;
  out.summary["final_energy_error"] = h.final_energy_error;
  out.summary["asymmetry"] = histogram_asymmetry(h);
  out.passed = hist_ok && drift_ok;
  out.summary["status"] = verdict(out.passed);
  return {out};
}

std::vector<Output> cmd_sample(const RunConfig& c) {
  const Regime regime = parse_regime(c.regime);
  const std::string name(to_string(regime));
  Output out;
  out.stem = "sample_" + name;
  out.table.columns = {"theta",    "expected_variance", "sample_variance", "variance_band", "mean",
                       "mean_band", "ks",               "ks_threshold",    "pass"};
  Output raw;
  raw.stem = out.stem + "_raw";
  raw.table.columns = {"point", "x"};

  const auto record_raw = [&](std::int64_t point, const SampleBatch& batch, double length) {
    if (!c.raw) return;
    for (double v : batch.values) raw.table.rows.push_back(Row{point, v * length});
  };

  if (regime == Regime::Microcanonical) {
    const auto osc = oscillators(c).front();
    const double length = 1.0 / osc.width_parameter();
    const auto unit = OscillatorSpec::from_frequency(1.0, 1.0);
    const auto orbit = ClassicalOrbit::from_amplitude(c.amplitude / length, unit);
    const auto batch = sample_microcanonical(c.count, orbit, c.seed);
    const double expected = 0.5 * orbit.amplitude() * orbit.amplitude();
    const auto s = summarize(batch, expected);
    const double ks = ks_statistic_microcanonical(batch.values, orbit);
    const double ks_threshold = 1.95 / std::sqrt(static_cast<double>(c.count));
    const bool ok = s.variance_within_band && ks < ks_threshold;
    const double l2 = length * length;
    out.table.rows.push_back(Row{std::monostate{}, expected * l2, s.variance * l2, s.variance_band * l2,
                                 s.mean * length, s.mean_band * length, ks, ks_threshold,
                                 std::string(verdict(ok))});
    out.passed = ok;
    record_raw(0, batch, length);
  } else {
    for (const auto& p : points(c)) {
      const auto& osc = p.reduced.oscillator;
      const auto& th = p.reduced.thermal;
      const double length = p.reduced.scales.length;
      const double l2 = length * length;
      const auto batch = regime == Regime::Quantum ? sample_quantum_thermal(c.count, osc, th, c.seed, p.index)
                                                   : sample_classical_canonical(c.count, osc, th, c.seed, p.index);
      const double expected = regime == Regime::Quantum ? variance(osc, th) : variance_classical(osc, th);
      const auto s = summarize(batch, expected);
      const bool ok = s.variance_within_band && s.mean_within_band;
      out.table.rows.push_back(Row{p.thermal.coldness(), expected * l2, s.variance * l2, s.variance_band * l2,
                                   s.mean * length, s.mean_band * length, std::monostate{}, std::monostate{},
                                   std::string(verdict(ok))});
      out.passed = out.passed && ok;
      record_raw(static_cast<std::int64_t>(p.index), batch, length);
    }
  }
  out.summary["regime"] = name;
  out.summary["count"] = c.count;
  out.summary["seed"] = c.seed;
  out.summary["status"] = verdict(out.passed);
  std::vector<Output> outputs{out};
  if (c.raw) {
    raw.summary["regime"] = name;
    outputs.push_back(std::move(raw));
  }
  return outputs;
}

struct OracleRow {
  double alpha = 0.0;
  double theta = 0.0;
  double max_deviation = 0.0;
  std::int64_t max_n_used = 0;
  double max_tail_bound = 0.0;
};

std::vector<Output> cmd_oracle_check(const RunConfig& c) {
  const auto rows = parallel_map(points(c), [&](const Point& p) {
    const auto& osc = p.reduced.oscillator;
    const auto& th = p.reduced.thermal;
    const double length = p.reduced.scales.length;
    const double half = c.half_width_sigmas * std::sqrt(variance(osc, th));
    OracleRow r{p.oscillator.width_parameter(), p.thermal.coldness()};
    for (int i = 0; i < c.grid; ++i) {
      const double xr = -half + 2.0 * half * i / (c.grid - 1);
      const auto sum = thermal_density_by_sum(xr, osc, th, {c.tol, OccupationWeights::kDefaultCap});
      r.max_deviation = std::max(r.max_deviation, std::abs(sum.value - thermal_density(xr, osc, th)) / length);
      r.max_n_used = std::max(r.max_n_used, sum.n_used);
      r.max_tail_bound = std::max(r.max_tail_bound, sum.tail_bound / length);
    }
    return r;
  });

  Output out;
  out.stem = "oracle_check";
  out.table.columns = {"alpha", "theta", "max_deviation", "max_n_used", "max_tail_bound", "pass"};
  double worst = 0.0;
  for (const auto& r : rows) {
    const bool ok = r.max_deviation < c.max_deviation;
    out.passed = out.passed && ok;
    worst = std::max(worst, r.max_deviation);
    out.table.rows.push_back(
        Row{r.alpha, r.theta, r.max_deviation, r.max_n_used, r.max_tail_bound, std::string(verdict(ok))});
  }
  out.summary["grid"] = c.grid;
  out.summary["max_deviation"] = worst;
  out.summary["threshold"] = c.max_deviation;
  out.summary["status"] = verdict(out.passed);
  return {out};
}

// ---------------------------------------------------------------------------
// Parsing

template <class T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& field) {
  if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<T>();
}

template <class T>
void read_field(const nlohmann::json& j, const char* key, T& field) {
  if (j.contains(key)) j.at(key).get_to(field);
}

void add_oscillator_options(CLI::App* sub, RunConfig& c, double& mass, double& wavenumber) {
  sub->add_option("--alpha", c.alphas, "Width parameter(s) alpha in reduced units");
  sub->add_option("--mass-amu", mass, "Oscillator (reduced) mass in amu");
  sub->add_option("--wavenumber-cm1", wavenumber, "Vibrational wavenumber in cm^-1");
  sub->add_option("--preset", c.preset, "Named bond preset, e.g. bond.CH");
  sub->add_option("--config", c.config_file, "Preset file (name = {mass_amu, wavenumber_cm1})");
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Output directory");
}

void add_temperature_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--temperature-k", c.temperatures_k, "Temperature(s) in kelvin (molecular inputs)");
  sub->add_option("--theta", c.thetas, "Coldness value(s) theta = hbar omega / k_B T");
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["alphas"] = c.alphas;
  j["mass_amu"] = c.mass_amu ? nlohmann::json(*c.mass_amu) : nlohmann::json(nullptr);
  j["wavenumber_cm1"] = c.wavenumber_cm1 ? nlohmann::json(*c.wavenumber_cm1) : nlohmann::json(nullptr);
  j["preset"] = c.preset;
  j["config_file"] = c.config_file;
  j["temperatures_k"] = c.temperatures_k;
  j["thetas"] = c.thetas;
  j["grid"] = c.grid;
  j["half_width_sigmas"] = c.half_width_sigmas;
  j["tol"] = c.tol;
  j["max_deviation"] = c.max_deviation;
  j["normalization_tol"] = c.normalization_tol;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["oracle"] = c.oracle;
  j["amplitude"] = c.amplitude;
  j["steps"] = c.steps;
  j["steps_per_period"] = c.steps_per_period;
  j["bins"] = c.bins;
  j["excluded_edge_bins"] = c.excluded_edge_bins;
  j["max_histogram_deviation"] = c.max_histogram_deviation;
  j["max_energy_drift"] = c.max_energy_drift;
  j["regime"] = c.regime;
  j["count"] = c.count;
  j["raw"] = c.raw;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  read_field(j, "command", c.command);
  read_field(j, "alphas", c.alphas);
  read_optional(j, "mass_amu", c.mass_amu);
  read_optional(j, "wavenumber_cm1", c.wavenumber_cm1);
  read_field(j, "preset", c.preset);
  read_field(j, "config_file", c.config_file);
  read_field(j, "temperatures_k", c.temperatures_k);
  read_field(j, "thetas", c.thetas);
  read_field(j, "grid", c.grid);
  read_field(j, "half_width_sigmas", c.half_width_sigmas);
  read_field(j, "tol", c.tol);
  read_field(j, "max_deviation", c.max_deviation);
  read_field(j, "normalization_tol", c.normalization_tol);
  read_field(j, "seed", c.seed);
  read_field(j, "format", c.format);
  read_field(j, "oracle", c.oracle);
  read_field(j, "amplitude", c.amplitude);
  read_field(j, "steps", c.steps);
  read_field(j, "steps_per_period", c.steps_per_period);
  read_field(j, "bins", c.bins);
  read_field(j, "excluded_edge_bins", c.excluded_edge_bins);
  read_field(j, "max_histogram_deviation", c.max_histogram_deviation);
  read_field(j, "max_energy_drift", c.max_energy_drift);
  read_field(j, "regime", c.regime);
  read_field(j, "count", c.count);
  read_field(j, "raw", c.raw);
  return c;
}

RunConfig read_config_echo(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("replay", "cannot open '" + path + "'");
  std::string first;
  f >> std::ws;
  if (f.peek() == '{') {
    return config_from_json(nlohmann::json::parse(f).at("config"));
  }
  const std::string marker = "# config: ";
  std::string line;
  while (std::getline(f, line)) {
    if (line.rfind(marker, 0) == 0) return config_from_json(nlohmann::json::parse(line.substr(marker.size())));
    if (line.empty() || line[0] != '#') break;
  }
  throw ValidationError("replay", "no config echo in '" + path + "'");
}

RunConfig resolve(RunConfig c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw ValidationError("command", "unknown command '" + c.command + "'");
  }
  if (c.format != "csv" && c.format != "json") throw ValidationError("format", "must be csv or json");

  if (is_molecular(c)) {
    if (!c.preset.empty() && !(c.mass_amu && c.wavenumber_cm1)) {
      PresetTable table = builtin_presets();
      if (!c.config_file.empty()) {
        for (auto& [name, preset] : load_presets(c.config_file)) table[name] = preset;
      }
      const auto it = table.find(c.preset);
      if (it == table.end()) throw ValidationError("preset", "unknown preset '" + c.preset + "'");
      if (!c.mass_amu) c.mass_amu = it->second.mass_amu;
      if (!c.wavenumber_cm1) c.wavenumber_cm1 = it->second.wavenumber_cm1;
    }
    if (!c.mass_amu) throw ValidationError("mass_amu", "molecular input needs --mass-amu");
    if (!c.wavenumber_cm1) throw ValidationError("wavenumber_cm1", "molecular input needs --wavenumber-cm1");
    if (!c.alphas.empty()) throw ValidationError("alpha", "--alpha is for reduced units only");
    detail::require_positive_finite(*c.mass_amu, "mass_amu");
    detail::require_positive_finite(*c.wavenumber_cm1, "wavenumber_cm1");
  } else {
    if (!c.temperatures_k.empty()) {
      throw ValidationError("temperature_k", "--temperature-k needs molecular inputs; use --theta in reduced units");
    }
    if (c.alphas.empty()) c.alphas = c.command == "oracle-check" ? std::vector<double>{0.5, 1.0, 3.0} : std::vector{1.0};
    for (double a : c.alphas) detail::require_positive_finite(a, "alpha");
  }
  for (double t : c.temperatures_k) detail::require_positive_finite(t, "temperature_k");
  for (double t : c.thetas) detail::require_positive_finite(t, "theta");

  const bool single = c.command == "variance-table" || c.command == "classical-sim" || c.command == "sample";
  if (single && c.alphas.size() > 1) throw ValidationError("alpha", c.command + " takes a single oscillator");

  if (c.command == "oracle-check" && c.thetas.empty() && c.temperatures_k.empty()) {
    c.thetas = {0.1, 0.5, 1.0, 2.0, 10.0};
  }
  const bool needs_temperature = c.command == "density" || c.command == "variance-table" ||
                                 c.command == "oracle-check" ||
                                 (c.command == "sample" && c.regime != "microcanonical");
  if (needs_temperature && c.thetas.empty() && c.temperatures_k.empty()) {
    throw ValidationError("temperature", "temperature list is empty; pass --theta or --temperature-k");
  }

  if (c.grid == 0) c.grid = c.command == "oracle-check" ? 101 : 1001;
  if (c.grid < 2) throw ValidationError("grid", "need at least 2 grid points");
  detail::require_positive_finite(c.half_width_sigmas, "half_width_sigmas");
  if (!(c.tol > 0.0 && c.tol <= 1e-3)) throw ValidationError("tol", "must lie in (0, 1e-3]");
  detail::require_positive_finite(c.max_deviation, "max_deviation");
  detail::require_positive_finite(c.normalization_tol, "normalization_tol");

  if (c.command == "classical-sim" || (c.command == "sample" && c.regime == "microcanonical")) {
    detail::require_positive_finite(c.amplitude, "amplitude");
  }
  if (c.command == "classical-sim") {
    if (c.steps < 100'000) throw ValidationError("steps", "must be at least 1e5");
    if (c.bins < 20) throw ValidationError("bins", "must be at least 20");
    if (!(c.steps_per_period > 20.0) || !std::isfinite(c.steps_per_period)) {
      throw ValidationError("steps_per_period", "dt must be below period/20");
    }
    if (c.excluded_edge_bins < 0 || 2 * c.excluded_edge_bins >= c.bins) {
      throw ValidationError("excluded_edge_bins", "leaves no interior bins");
    }
    detail::require_positive_finite(c.max_histogram_deviation, "max_histogram_deviation");
    detail::require_positive_finite(c.max_energy_drift, "max_energy_drift");
  }
  if (c.command == "sample") {
    (void)parse_regime(c.regime);
    if (c.count < 2) throw ValidationError("count", "need at least 2 samples");
  }
  return c;
}

int execute(const RunConfig& c, std::ostream& report) {
  std::vector<Output> outputs;
  if (c.command == "density") {
    outputs = cmd_density(c);
  } else if (c.command == "variance-table") {
    outputs = cmd_variance_table(c);
  } else if (c.command == "classical-sim") {
    outputs = cmd_classical_sim(c);
  } else if (c.command == "sample") {
    outputs = cmd_sample(c);
  } else {
    outputs = cmd_oracle_check(c);
  }
  bool ok = true;
  for (const auto& o : outputs) {
    write_output(c, o, report);
    ok = ok && o.passed;
  }
  report << "overall: " << verdict(ok) << '\n';
  return ok ? kOk : kValidationFailed;
}

int run(const std::vector<std::string>& args, std::ostream& report, std::ostream& errors) {
  CLI::App app{"Thermal and quantum position fluctuations of a harmonic oscillator", "qho"};
  app.require_subcommand(1);

  RunConfig c;
  c.alphas.clear();
  double mass = 0.0;
  double wavenumber = 0.0;
  std::string replay_file;
  std::string replay_out;

  auto* density = app.add_subcommand("density", "Thermal, ground-state and classical density profiles");
  add_oscillator_options(density, c, mass, wavenumber);
  add_temperature_options(density, c);
  density->add_option("--grid", c.grid, "Grid points (default 1001)");
  density->add_option("--half-width", c.half_width_sigmas, "Grid half-width in units of sigma");
  density->add_option("--tol", c.tol, "Truncation tolerance for the eigenstate sum");
  density->add_option("--max-deviation", c.max_deviation, "Allowed |sum - closed form|");
  density->add_flag("--oracle", c.oracle, "Add the truncated eigenstate sum and compare");

  auto* table = app.add_subcommand("variance-table", "Variance, its limits and the quantumness ratio");
  add_oscillator_options(table, c, mass, wavenumber);
  add_temperature_options(table, c);

  auto* sim = app.add_subcommand("classical-sim", "Velocity-Verlet histogram vs the arcsine density");
  add_oscillator_options(sim, c, mass, wavenumber);
  sim->add_option("--amplitude", c.amplitude, "Orbit amplitude (output length units)");
  sim->add_option("--steps", c.steps, "Integration steps");
  sim->add_option("--steps-per-period", c.steps_per_period, "period / dt");
  sim->add_option("--bins", c.bins, "Histogram bins");
  sim->add_option("--edge-bins", c.excluded_edge_bins, "Bins excluded on each side");

  auto* sample = app.add_subcommand("sample", "Monte Carlo draws with closed-form variance checks");
  add_oscillator_options(sample, c, mass, wavenumber);
  add_temperature_options(sample, c);
  sample->add_option("--regime", c.regime, "quantum | classical | microcanonical")
      ->check(CLI::IsMember({"quantum", "classical", "microcanonical"}));
  sample->add_option("--count", c.count, "Draws per temperature");
  sample->add_option("--amplitude", c.amplitude, "Orbit amplitude for the microcanonical regime");
  sample->add_flag("--raw", c.raw, "Also write the raw samples");

  auto* oracle = app.add_subcommand("oracle-check", "Eigenstate sum vs closed form over a theta/alpha grid");
  add_oscillator_options(oracle, c, mass, wavenumber);
  add_temperature_options(oracle, c);
  oracle->add_option("--grid", c.grid, "Grid points (default 101)");
  oracle->add_option("--tol", c.tol, "Truncation tolerance for the eigenstate sum");
  oracle->add_option("--max-deviation", c.max_deviation, "Allowed |sum - closed form|");

  auto* replay = app.add_subcommand("replay", "Re-run the configuration echoed in an output file");
  replay->add_option("file", replay_file, "CSV or JSON output of an earlier run")->required();
  replay->add_option("--out", replay_out, "Override the output directory");

  std::vector<const char*> argv{"qho"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, report, errors);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (replay->parsed()) {
      c = read_config_echo(replay_file);
      if (!replay_out.empty()) c.out = replay_out;
    } else {
      for (auto* sub : app.get_subcommands()) {
        c.command = sub->get_name();
        if (sub->count("--mass-amu")) c.mass_amu = mass;
        if (sub->count("--wavenumber-cm1")) c.wavenumber_cm1 = wavenumber;
      }
    }
    return execute(resolve(c), report);
  } catch (const ValidationError& e) {
    errors << "qho: invalid configuration: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    errors << "qho: " << e.what() << '\n';
    return kValidationFailed;
  } catch (const nlohmann::json::exception& e) {
    errors << "qho: malformed config echo: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace qho::cli
