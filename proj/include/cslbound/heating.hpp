#pragma once

#include <Eigen/Core>

namespace cslbound {

/// Single mechanical mode treated as a damped harmonic oscillator.
struct OscillatorParams {
  double m = 0.0;       ///< total motional mass, kg
  double omega0 = 0.0;  ///< rad/s
  double Q = 0.0;
  double T_bath = 0.0;  ///< K

  double gamma_m() const { return omega0 / Q; }
  double f0() const;
  void validate() const;
};

/// Excess mode temperature hbar^2 Q eta / (2 k_B m omega0), K.
double delta_T_csl(const OscillatorParams& osc, double eta);

/// k_B (T_bath + delta_T_csl), J. Sets *high_temperature_ok (if given) to
/// whether k_B T_bath exceeds hbar omega0 by at least a factor 100.
double mean_energy(const OscillatorParams& osc, double eta, bool* high_temperature_ok = nullptr);

/// hbar omega0 / k_B, K.
double quantum_temperature(const OscillatorParams& osc);

/// Position PSD, two-sided in angular frequency, m^2 s:
///   (hbar / 4 m w0) (2 g k_B T / hbar w0 + eta hbar / m w0) / ((w - w0)^2 + g^2/4).
/// (1/pi) times its integral over the positive peak is <q^2>.
Eigen::ArrayXd theoretical_psd(const OscillatorParams& osc, double eta, const Eigen::ArrayXd& omega);

/// S_p = m^2 w^2 S_q.
Eigen::ArrayXd theoretical_momentum_psd(const OscillatorParams& osc, double eta, const Eigen::ArrayXd& omega);

/// One-sided PSD in Hz (m^2/Hz) whose integral over f > 0 is <q^2>:
/// S(f) = 2 S_q(2 pi f).
Eigen::ArrayXd one_sided_psd_hz(const OscillatorParams& osc, double eta, const Eigen::ArrayXd& freq_hz);

/// k_B (T_bath + delta_T_csl) / (m w0^2), m^2.
double position_variance(const OscillatorParams& osc, double eta);

}  // namespace cslbound
