#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cslbound/heating.hpp"
#include "cslbound/spectrum.hpp"

namespace cslbound {

struct SimulationSpec {
  OscillatorParams osc;
  double eta = 0.0;           ///< 1/(m^2 s)
  double dt = 0.0;            ///< s, at most 1/(50 f0)
  long n_steps = 0;           ///< recorded steps per trajectory, after burn-in
  int n_trajectories = 1;
  std::uint64_t seed = 0;
  double burn_in = 0.0;       ///< s, at least 5 Q / omega0
  int welch_segment = 1 << 15;  ///< samples per Welch segment (power of two, 0 disables the PSD)

  /// Throws StabilityError for a coarse dt and DomainError for the rest.
  void validate() const;
};

struct SimulationStats {
  double mean_energy = 0.0;      ///< J, average over trajectories of the time average
  double energy_sem = 0.0;       ///< J, standard error from trajectory spread
  double mean_q2 = 0.0;          ///< m^2
  double mean_p2 = 0.0;          ///< (kg m/s)^2
  std::vector<double> trajectory_energy;  ///< J, one per trajectory
  SpectrumRecord psd;            ///< one-sided Welch PSD of q, m^2/Hz
};

/// Integrates dq = p/m dt, dp = (-m w0^2 q - g p) dt + sqrt(2 m g k_B T) dW1 + hbar sqrt(eta) dW2
/// with the semi-implicit scheme
///   p' = (p - m w0^2 q dt + noise) / (1 + g dt),  q' = q + p' dt / m.
/// Trajectories run on worker threads with streams split from the master seed
/// by trajectory index, so the result does not depend on scheduling.
SimulationStats simulate(const SimulationSpec& spec, unsigned threads = 0);

struct EffectiveTemperature {
  double T_eff = 0.0;  ///< K
  double sigma = 0.0;  ///< K
};

/// <E>/k_B with its standard error. Throws InsufficientDataError when empty.
EffectiveTemperature effective_temperature(const SimulationStats& stats);

/// Hann-windowed Welch estimate (50% overlap), one-sided, m^2/Hz per unit
/// signal. Accumulates into `sum` (size segment/2 + 1) and returns the number
/// of segments added.
int welch_accumulate(const Eigen::ArrayXd& signal, double fs, int segment, Eigen::ArrayXd& sum);

/// Counter-based seed for stream `index` of a master seed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace cslbound
