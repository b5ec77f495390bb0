#pragma once

// Named oscillator presets for molecular bonds.
//
// File format, one preset per line:
//
//   # comment
//   bond.CH = {0.9299, 2900}                          # {mass_amu, wavenumber_cm1}
//   bond.OH = {mass_amu = 0.9481, wavenumber_cm1 = 3650}
//
// Braces are optional. Later definitions override earlier ones.

#include <istream>
#include <map>
#include <string>

namespace qho {

struct BondPreset {
  double mass_amu = 0.0;
  double wavenumber_cm1 = 0.0;
};

using PresetTable = std::map<std::string, BondPreset, std::less<>>;

// A handful of common stretches (reduced masses, approximate fundamentals).
PresetTable builtin_presets();

// Throws ValidationError naming the line on malformed input.
PresetTable parse_presets(std::istream& in);
PresetTable load_presets(const std::string& path);

}  // namespace qho
