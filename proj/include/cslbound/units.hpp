#pragma once

#include <string>
#include <string_view>

namespace cslbound {

enum class Dimension {
  length,             ///< m
  mass,               ///< kg
  density,            ///< kg/m^3
  temperature,        ///< K
  frequency,          ///< Hz
  rate,               ///< 1/s
  time,               ///< s
  collapse_strength,  ///< 1/(m^2 s)
  displacement_psd,   ///< m^2/Hz
};

std::string_view dimension_name(Dimension d);

/// SI unit used when printing values of a dimension.
std::string_view si_unit(Dimension d);

/// Parses "<number><unit>" or "<number> <unit>", e.g. "0.28mK", "2.25 um",
/// "2330 kg/m^3", "2.2e-17 1/s". The unit is mandatory and must belong to
/// `d`. Returns the value in SI units. Throws UnitError.
double parse_quantity(std::string_view text, Dimension d);

/// Lists the accepted unit spellings of a dimension (for help texts).
std::string accepted_units(Dimension d);

}  // namespace cslbound
