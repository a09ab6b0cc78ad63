#include "cslbound/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

struct UnitEntry {
  std::string_view symbol;
  double factor;
};

const std::vector<UnitEntry>& table(Dimension d) {
  static const std::vector<UnitEntry> length{{"m", 1.0},     {"cm", 1e-2},  {"mm", 1e-3},
                                             {"um", 1e-6},   {"µm", 1e-6},  {"nm", 1e-9},
                                             {"pm", 1e-12}};
  static const std::vector<UnitEntry> mass{{"kg", 1.0},   {"g", 1e-3},   {"mg", 1e-6}, {"ug", 1e-9},
                                           {"ng", 1e-12}, {"pg", 1e-15}, {"fg", 1e-18}};
  static const std::vector<UnitEntry> density{{"kg/m^3", 1.0}, {"kg/m3", 1.0}, {"g/cm^3", 1e3}, {"g/cm3", 1e3}};
  static const std::vector<UnitEntry> temperature{{"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}, {"µK", 1e-6}, {"nK", 1e-9}};
  static const std::vector<UnitEntry> frequency{{"Hz", 1.0}, {"mHz", 1e-3}, {"kHz", 1e3}, {"MHz", 1e6}};
  static const std::vector<UnitEntry> rate{{"1/s", 1.0}, {"/s", 1.0}, {"s^-1", 1.0}};
  static const std::vector<UnitEntry> time{{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"µs", 1e-6}, {"ns", 1e-9}};
  static const std::vector<UnitEntry> strength{{"1/(m^2 s)", 1.0}, {"1/(m^2*s)", 1.0}, {"m^-2 s^-1", 1.0},
                                               {"m^-2s^-1", 1.0}};
  static const std::vector<UnitEntry> psd{{"m^2/Hz", 1.0}, {"nm^2/Hz", 1e-18}, {"pm^2/Hz", 1e-24}};
  switch (d) {
    case Dimension::length: return length;
    case Dimension::mass: return mass;
    case Dimension::density: return density;
    case Dimension::temperature: return temperature;
    case Dimension::frequency: return frequency;
    case Dimension::rate: return rate;
    case Dimension::time: return time;
    case Dimension::collapse_strength: return strength;
    case Dimension::displacement_psd: return psd;
  }
  return length;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Power-of-ten prefixes are applied by shifting the decimal exponent and
// reparsing, so "0.28mK" reads as the double nearest 2.8e-4.
double rescale_decimal(std::string_view number, double value, double factor) {
  const double k = std::round(std::log10(factor));
  if (factor == 1.0 || std::pow(10.0, k) != factor) return value * factor;
  std::string mantissa(number);
  long exponent = static_cast<long>(k);
  if (const auto pos = mantissa.find_first_of("eE"); pos != std::string::npos) {
    exponent += std::stol(mantissa.substr(pos + 1));
    mantissa.resize(pos);
  }
  const std::string text = mantissa + "e" + std::to_string(exponent);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) return value * factor;
  return out;
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::length: return "length";
    case Dimension::mass: return "mass";
    case Dimension::density: return "density";
    case Dimension::temperature: return "temperature";
    case Dimension::frequency: return "frequency";
    case Dimension::rate: return "rate";
    case Dimension::time: return "time";
    case Dimension::collapse_strength: return "collapse strength";
    case Dimension::displacement_psd: return "displacement PSD";
  }
  return "unknown";
}

std::string_view si_unit(Dimension d) { return table(d).front().symbol; }

std::string accepted_units(Dimension d) {
  std::string out;
  for (const auto& e : table(d)) {
    if (!out.empty()) out += ", ";
    out += e.symbol;
  }
  return out;
}

double parse_quantity(std::string_view text, Dimension d) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr == s.data())
    throw UnitError("cannot read a number from '" + std::string(text) + "'");
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
  if (unit.empty())
    throw UnitError("'" + std::string(text) + "' has no unit; expected a " + std::string(dimension_name(d)) +
                    " in one of: " + accepted_units(d));
  for (const auto& e : table(d)) {
    if (unit == e.symbol) {
      if (!std::isfinite(value)) throw UnitError("'" + std::string(text) + "' is not finite");
      return rescale_decimal(std::string_view(s.data(), static_cast<std::size_t>(ptr - s.data())), value, e.factor);
    }
  }
  throw UnitError("unit '" + std::string(unit) + "' in '" + std::string(text) + "' is not a " +
                  std::string(dimension_name(d)) + " unit; accepted: " + accepted_units(d));
}

}  // namespace cslbound
