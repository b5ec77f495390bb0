#include "qho/presets.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <string_view>
#include <vector>

#include "qho/errors.hpp"

namespace qho {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, const std::string& where) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError(where, "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

PresetTable builtin_presets() {
  return {
      {"bond.CH", {0.929854, 2900.0}},
      {"bond.NH", {0.940465, 3300.0}},
      {"bond.OH", {0.948087, 3650.0}},
      {"bond.CO", {6.857143, 1700.0}},
      {"bond.HH", {0.503913, 4401.0}},
  };
}

PresetTable parse_presets(std::istream& in) {
  PresetTable table;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ValidationError(where, "expected 'name = {mass_amu, wavenumber_cm1}'");
    const std::string name(trim(line.substr(0, eq)));
    if (name.empty()) throw ValidationError(where, "empty preset name");

    std::string_view body = trim(line.substr(eq + 1));
    if (!body.empty() && body.front() == '{') {
      if (body.back() != '}') throw ValidationError(where, "unterminated '{'");
      body = trim(body.substr(1, body.size() - 2));
    }
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw ValidationError(where, "expected two values");

    BondPreset preset;
    bool have_mass = false;
    bool have_wavenumber = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::string_view part = trim(parts[i]);
      std::string_view key = i == 0 ? "mass_amu" : "wavenumber_cm1";
      if (const auto inner = part.find('='); inner != std::string_view::npos) {
        key = trim(part.substr(0, inner));
        part = part.substr(inner + 1);
      }
      const double value = parse_number(part, where);
      if (key == "mass_amu") {
        preset.mass_amu = value;
        have_mass = true;
      } else if (key == "wavenumber_cm1") {
        preset.wavenumber_cm1 = value;
        have_wavenumber = true;
      } else {
        throw ValidationError(where, "unknown key '" + std::string(key) + "'");
      }
    }
    if (!have_mass || !have_wavenumber) throw ValidationError(where, "need both mass_amu and wavenumber_cm1");
    detail::require_positive_finite(preset.mass_amu, "mass_amu");
    detail::require_positive_finite(preset.wavenumber_cm1, "wavenumber_cm1");
    table[name] = preset;
  }
  return table;
}

PresetTable load_presets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open '" + path + "'");
  return parse_presets(in);
}

}  // namespace qho
