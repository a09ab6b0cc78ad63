#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cslbound/heating.hpp"

namespace cslbound {

/// Averaged one-sided displacement spectrum on a uniform grid.
struct SpectrumRecord {
  Eigen::ArrayXd freqs;  ///< Hz, strictly increasing, uniform
  Eigen::ArrayXd psd;    ///< m^2/Hz
  int n_averages = 1;

  double df() const;
  /// Throws DataError on size mismatch, non-uniform grid, or negative psd.
  void validate() const;
};

/// Lorentzian line plus white floor, one-sided in Hz:
///   S(f) = area (G/2pi) / ((f - f0)^2 + G^2/4) + floor,  G = FWHM in Hz.
struct LorentzianParams {
  double f0_hz = 0.0;
  double fwhm_hz = 0.0;
  double area = 0.0;   ///< m^2
  double floor = 0.0;  ///< m^2/Hz

  Eigen::ArrayXd evaluate(const Eigen::ArrayXd& freqs) const;
};

struct LorentzianFit {
  double f0_fit = 0.0;       ///< Hz
  double gamma_fit = 0.0;    ///< s^-1 (2 pi FWHM)
  double area = 0.0;         ///< m^2
  double white_floor = 0.0;  ///< m^2/Hz
  /// Covariance of (f0 [Hz], gamma [1/s], area [m^2], floor [m^2/Hz]).
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
  double T_m = 0.0;          ///< K, filled when an oscillator is supplied
  double sigma_T_m = 0.0;
  double chi2_reduced = 0.0;
  int iterations = 0;

  LorentzianParams params() const;
};

struct SynthesisOptions {
  double floor = 0.0;              ///< m^2/Hz
  double df = 0.02;                ///< Hz
  int n_averages = 20;
  double span_linewidths = 40.0;   ///< full span in units of gamma_m / 2pi
  std::uint64_t seed = 0;
};

/// Expected one-sided spectrum plus floor, each bin drawn from a Gamma
/// distribution with shape n_averages and that mean. n_averages <= 0 gives
/// the noiseless expectation.
SpectrumRecord synthesize_spectrum(const OscillatorParams& osc, double eta, const SynthesisOptions& opt);

struct FitOptions {
  int max_iterations = 500;
  double rel_step_tol = 1e-8;
  std::optional<LorentzianParams> initial_guess;
};

/// Peak bin, half-height width and tail median.
LorentzianParams auto_initial_guess(const SpectrumRecord& spec);

/// Levenberg-Marquardt with Gamma-statistics weights n/M^2 re-evaluated at
/// every step (the fixed point is the Gamma maximum-likelihood estimate).
/// With `osc`, T_m is filled from the fitted area.
LorentzianFit fit_lorentzian(const SpectrumRecord& spec, const FitOptions& options = {},
                             const OscillatorParams* osc = nullptr);

/// Fits independent spectra on worker threads; order of results follows input.
std::vector<LorentzianFit> fit_lorentzian_batch(std::span<const SpectrumRecord> spectra,
                                                const FitOptions& options = {}, unsigned threads = 0);

/// m omega0^2 area / k_B, K.
double mode_temperature(const LorentzianFit& fit, const OscillatorParams& osc);

}  // namespace cslbound
