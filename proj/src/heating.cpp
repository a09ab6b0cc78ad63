#include "cslbound/heating.hpp"

#include <cmath>

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

void require_eta(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("collapse strength must be non-negative");
}

}  // namespace

double OscillatorParams::f0() const { return omega0 / (2.0 * kPi); }

void OscillatorParams::validate() const {
  if (!(m > 0.0 && omega0 > 0.0 && Q > 0.0) || !std::isfinite(m * omega0 * Q))
    throw DomainError("oscillator mass, frequency and Q must be positive");
  if (!(T_bath >= 0.0) || !std::isfinite(T_bath)) throw DomainError("bath temperature must be non-negative");
}

double delta_T_csl(const OscillatorParams& osc, double eta) {
  osc.validate();
  require_eta(eta);
  const double hbar = kConstants.hbar;
  return hbar * hbar * osc.Q * eta / (2.0 * kConstants.k_B * osc.m * osc.omega0);
}

double quantum_temperature(const OscillatorParams& osc) {
  return kConstants.hbar * osc.omega0 / kConstants.k_B;
}

double mean_energy(const OscillatorParams& osc, double eta, bool* high_temperature_ok) {
  const double dT = delta_T_csl(osc, eta);
  if (high_temperature_ok) *high_temperature_ok = osc.T_bath >= 100.0 * quantum_temperature(osc);
  return kConstants.k_B * (osc.T_bath + dT);
}

double position_variance(const OscillatorParams& osc, double eta) {
  return kConstants.k_B * (osc.T_bath + delta_T_csl(osc, eta)) / (osc.m * osc.omega0 * osc.omega0);
}

Eigen::ArrayXd theoretical_psd(const OscillatorParams& osc, double eta, const Eigen::ArrayXd& omega) {
  osc.validate();
  require_eta(eta);
  if (omega.size() > 0 && !(omega.minCoeff() > 0.0)) throw DomainError("angular frequencies must be positive");
  const double hbar = kConstants.hbar;
  const double g = osc.gamma_m();
  const double w0 = osc.omega0;
  const double drive = 2.0 * g * kConstants.k_B * osc.T_bath / (hbar * w0) + eta * hbar / (osc.m * w0);
  const double amplitude = hbar / (4.0 * osc.m * w0) * drive;
  return amplitude / ((omega - w0).square() + 0.25 * g * g);
}

Eigen::ArrayXd theoretical_momentum_psd(const OscillatorParams& osc, double eta, const Eigen::ArrayXd& omega) {
  return osc.m * osc.m * omega.square() * theoretical_psd(osc, eta, omega);
}

Eigen::ArrayXd one_sided_psd_hz(const OscillatorParams& osc, double eta, const Eigen::ArrayXd& freq_hz) {
  return 2.0 * theoretical_psd(osc, eta, 2.0 * kPi * freq_hz);
}

}  // namespace cslbound
