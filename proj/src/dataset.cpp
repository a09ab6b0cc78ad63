#include "cslbound/dataset.hpp"

#include <cmath>
#include <random>

#include "cslbound/errors.hpp"

namespace cslbound {

double saturated_temperature(const DatasetSpec& spec, double T) {
  if (spec.T_sat <= 0.0) return spec.alpha * T + spec.T0;
  const double n = spec.n_exponent;
  // (T^n + Ts^n)^{1/n} written to stay finite for large ratios
  const double hi = std::max(T, spec.T_sat), lo = std::min(T, spec.T_sat);
  const double base = hi * std::pow(1.0 + std::pow(lo / hi, n), 1.0 / n);
  return spec.alpha * base + spec.T0;
}

TemperatureSeries synthesize_dataset(const DatasetSpec& spec) {
  if (!(spec.n_exponent > 0.0) || spec.T_sat < 0.0 || spec.rel_sigma < 0.0 || spec.abs_sigma < 0.0 ||
      !(spec.rel_sigma > 0.0 || spec.abs_sigma > 0.0))
    throw DomainError("dataset: invalid noise or saturation parameters");
  std::vector<double> grid = spec.T_grid;
  if (grid.empty()) {
    const int n = 25;
    for (int i = 0; i < n; ++i) grid.push_back(0.008 * std::pow(1.0 / 0.008, i / (n - 1.0)));
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  TemperatureSeries series;
  series.cut_low = spec.cut_low;
  for (double T : grid) {
    if (!(T > 0.0)) throw DomainError("dataset: temperatures must be positive");
    const double sigma = std::hypot(spec.rel_sigma * T, spec.abs_sigma);
    series.points.push_back({T, saturated_temperature(spec, T) + sigma * normal(rng), sigma});
  }
  return series;
}

}  // namespace cslbound
