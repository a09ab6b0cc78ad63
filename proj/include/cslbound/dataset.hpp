#pragma once

#include <cstdint>
#include <vector>

#include "cslbound/stats.hpp"

namespace cslbound {

/// Synthetic mode-temperature data with known truth:
///   T_m = alpha (T^n + T_sat^n)^{1/n} + T0 + noise,
///   sigma = sqrt((rel_sigma T)^2 + abs_sigma^2).
/// Below T_sat the data flatten out; far above it they follow the line.
struct DatasetSpec {
  double alpha = 1.0;
  double T0 = 0.0;              ///< K
  double rel_sigma = 0.03;
  double abs_sigma = 0.5e-3;    ///< K
  std::vector<double> T_grid;   ///< K; empty: 25 log-spaced points in [8 mK, 1 K]
  double T_sat = 0.025;         ///< K, 0 disables saturation
  double n_exponent = 3.0;
  double cut_low = 0.025;       ///< K, copied into the series
  std::uint64_t seed = 0;
};

/// The noiseless model value at one temperature.
double saturated_temperature(const DatasetSpec& spec, double T);

TemperatureSeries synthesize_dataset(const DatasetSpec& spec);

}  // namespace cslbound
