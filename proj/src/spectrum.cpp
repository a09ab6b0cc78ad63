#include "cslbound/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <Eigen/Dense>

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"

namespace cslbound {

double SpectrumRecord::df() const {
  if (freqs.size() < 2) return 0.0;
  return (freqs[freqs.size() - 1] - freqs[0]) / static_cast<double>(freqs.size() - 1);
}

void SpectrumRecord::validate() const {
  if (freqs.size() != psd.size()) throw DataError("spectrum: frequency and psd columns differ in length");
  if (freqs.size() < 8) throw InsufficientDataError("spectrum: need at least 8 bins");
  if (n_averages < 1) throw DataError("spectrum: n_averages must be >= 1");
  const double step = df();
  if (!(step > 0.0)) throw DataError("spectrum: frequencies must be strictly increasing");
  for (Eigen::Index i = 1; i < freqs.size(); ++i) {
    const double gap = freqs[i] - freqs[i - 1];
    if (!(gap > 0.0) || std::abs(gap - step) > 1e-6 * step)
      throw DataError("spectrum: frequency grid is not uniform at bin " + std::to_string(i));
  }
  if (!psd.allFinite() || psd.minCoeff() < 0.0) throw DataError("spectrum: psd must be finite and non-negative");
}

Eigen::ArrayXd LorentzianParams::evaluate(const Eigen::ArrayXd& f) const {
  const double g = fwhm_hz;
  return area * (g / (2.0 * kPi)) / ((f - f0_hz).square() + 0.25 * g * g) + floor;
}

LorentzianParams LorentzianFit::params() const {
  return {f0_fit, gamma_fit / (2.0 * kPi), area, white_floor};
}

SpectrumRecord synthesize_spectrum(const OscillatorParams& osc, double eta, const SynthesisOptions& opt) {
  osc.validate();
  if (!(opt.df > 0.0 && opt.span_linewidths > 0.0) || opt.floor < 0.0)
    throw DomainError("synthesis: df and span must be positive, floor non-negative");
  const double f0 = osc.f0();
  const double span = opt.span_linewidths * osc.gamma_m() / (2.0 * kPi);
  const long bins = static_cast<long>(std::ceil(span / opt.df)) + 1;
  if (bins < 8 || bins > 50'000'000L) throw DomainError("synthesis: span/df gives an unusable number of bins");
  // Grid on multiples of df so that files round-trip exactly.
  const double start = (std::round(f0 / opt.df) - static_cast<double>(bins / 2)) * opt.df;
  if (!(start > 0.0)) throw DomainError("synthesis: span reaches zero frequency");

  SpectrumRecord out;
  out.freqs = Eigen::ArrayXd::LinSpaced(bins, start, start + opt.df * static_cast<double>(bins - 1));
  out.n_averages = std::max(1, opt.n_averages);
  const Eigen::ArrayXd mean = one_sided_psd_hz(osc, eta, out.freqs) + opt.floor;
  if (opt.n_averages <= 0) {
    out.psd = mean;
    return out;
  }
  std::mt19937_64 rng(opt.seed);
  std::gamma_distribution<double> unit(static_cast<double>(opt.n_averages), 1.0 / opt.n_averages);
  out.psd.resize(bins);
  for (long i = 0; i < bins; ++i) out.psd[i] = mean[i] * unit(rng);
  return out;
}

LorentzianParams auto_initial_guess(const SpectrumRecord& spec) {
  spec.validate();
  const Eigen::Index n = spec.psd.size();
  // Tail median from the outer fifth on each side.
  const Eigen::Index tail = std::max<Eigen::Index>(2, n / 10);
  std::vector<double> tails;
  for (Eigen::Index i = 0; i < tail; ++i) {
    tails.push_back(spec.psd[i]);
    tails.push_back(spec.psd[n - 1 - i]);
  }
  std::nth_element(tails.begin(), tails.begin() + tails.size() / 2, tails.end());
  const double floor = tails[tails.size() / 2];

  Eigen::Index peak = 0;
  spec.psd.maxCoeff(&peak);
  const double height = spec.psd[peak] - floor;
  const double half = floor + 0.5 * height;
  Eigen::Index lo = peak, hi = peak;
  while (lo > 0 && spec.psd[lo - 1] > half) --lo;
  while (hi < n - 1 && spec.psd[hi + 1] > half) ++hi;
  const double df = spec.df();
  const double fwhm = std::max(static_cast<double>(hi - lo + 1) * df, 2.0 * df);

  LorentzianParams guess;
  guess.f0_hz = spec.freqs[peak];
  guess.fwhm_hz = fwhm;
  guess.area = std::max(height, 0.0) * kPi * fwhm / 2.0;
  guess.floor = std::max(floor, 0.0);
  return guess;
}

namespace {

using Vec4 = Eigen::Vector4d;

/// Model and analytic Jacobian, parameters ordered with respect to (f0, fwhm, area, floor).
void model_and_jacobian(const Vec4& p, const Eigen::ArrayXd& f, Eigen::ArrayXd& model, Eigen::MatrixXd& jac) {
  const double g = p[1], a = p[2];
  const Eigen::ArrayXd x = f - p[0];
  const Eigen::ArrayXd denom = x.square() + 0.25 * g * g;
  const Eigen::ArrayXd shape = (g / (2.0 * kPi)) / denom;
  model = a * shape + p[3];
  jac.resize(f.size(), 4);
  jac.col(0) = (a * shape * 2.0 * x / denom).matrix();
  jac.col(1) = (a / (2.0 * kPi) * (x.square() - 0.25 * g * g) / denom.square()).matrix();
  jac.col(2) = shape.matrix();
  jac.col(3).setOnes();
}

}  // namespace

LorentzianFit fit_lorentzian(const SpectrumRecord& spec, const FitOptions& options, const OscillatorParams* osc) {
  spec.validate();
  const LorentzianParams guess = options.initial_guess.value_or(auto_initial_guess(spec));
  if (!(guess.fwhm_hz > 0.0 && guess.area > 0.0))
    throw DegenerateFitError("fit: no peak above the floor to start from");
  const Eigen::ArrayXd& f = spec.freqs;
  const Eigen::ArrayXd& y = spec.psd;
  const double n_avg = static_cast<double>(spec.n_averages);

  // Work in scaled coordinates so all four parameters are O(1).
  const double floor_scale = std::max(guess.floor, 1e-3 * guess.area / guess.fwhm_hz);
  const Vec4 scale(guess.fwhm_hz, guess.fwhm_hz, guess.area, floor_scale);
  Vec4 p(guess.f0_hz, guess.fwhm_hz, guess.area, guess.floor);

  Eigen::ArrayXd model;
  Eigen::MatrixXd jac;
  const auto objective = [&](const Vec4& q, Eigen::ArrayXd& m, Eigen::MatrixXd& j) {
    model_and_jacobian(q, f, m, j);
    if (!(m.minCoeff() > 0.0)) return std::numeric_limits<double>::infinity();
    return 0.0;
  };

  double mu = 1e-3;
  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iterations; ++iter) {
    if (!std::isfinite(objective(p, model, jac))) throw DegenerateFitError("fit: model became non-positive");
    // Weights from the current model (Gamma variance M^2/n).
    const Eigen::ArrayXd w = n_avg / model.square();
    const Eigen::MatrixXd js = jac * scale.asDiagonal();
    const Eigen::Matrix4d jtwj = js.transpose() * w.matrix().asDiagonal() * js;
    const Eigen::Vector4d grad = js.transpose() * (w * (y - model)).matrix();
    const double cost = (w * (y - model).square()).sum();

    bool accepted = false;
    Vec4 step_scaled = Vec4::Zero();
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::Matrix4d a = jtwj;
      a.diagonal() += mu * jtwj.diagonal().cwiseMax(1e-12);
      step_scaled = a.ldlt().solve(grad);
      const Vec4 trial = p + scale.cwiseProduct(step_scaled);
      Eigen::ArrayXd m_trial;
      Eigen::MatrixXd j_trial;
      if (trial[1] > 0.0 && std::isfinite(objective(trial, m_trial, j_trial))) {
        // Compare under the same weights, as in a reweighted Gauss-Newton step.
        const double trial_cost = (w * (y - m_trial).square()).sum();
        if (trial_cost <= cost) {
          p = trial;
          mu = std::max(mu / 3.0, 1e-12);
          accepted = true;
          break;
        }
      }
      mu *= 4.0;
    }
    if (!accepted) {
      // No descent direction left under the current weights: stationary point.
      converged = true;
      break;
    }
    if (step_scaled.cwiseAbs().maxCoeff() < options.rel_step_tol) {
      converged = true;
      ++iter;
      break;
    }
  }
  if (!converged) throw ConvergenceError("fit: Levenberg-Marquardt did not converge in " +
                                         std::to_string(options.max_iterations) + " iterations");

  model_and_jacobian(p, f, model, jac);
  if (!(model.minCoeff() > 0.0)) throw DegenerateFitError("fit: model became non-positive");
  const Eigen::ArrayXd w = n_avg / model.square();
  const Eigen::Matrix4d info = jac.transpose() * w.matrix().asDiagonal() * jac;
  const Eigen::Matrix4d info_scaled = scale.asDiagonal() * info * scale.asDiagonal();
  const Eigen::Matrix4d cov_scaled = info_scaled.inverse();
  Eigen::Matrix4d cov = scale.asDiagonal() * cov_scaled * scale.asDiagonal();

  const double df = spec.df();
  const double span = f[f.size() - 1] - f[0];
  if (!(p[1] >= 2.0 * df)) throw DegenerateFitError("fit: linewidth below two frequency bins (unresolved line)");
  if (!(p[2] > 0.0)) throw DegenerateFitError("fit: non-positive peak area");
  if (p[1] > span) throw DegenerateFitError("fit: linewidth exceeds the spectral span");
  if (p[0] < f[0] || p[0] > f[f.size() - 1]) throw DegenerateFitError("fit: centre frequency outside the window");
  if (!cov.allFinite()) throw DegenerateFitError("fit: singular information matrix");

  // fwhm [Hz] -> gamma [1/s]
  Eigen::Matrix4d to_gamma = Eigen::Matrix4d::Identity();
  to_gamma(1, 1) = 2.0 * kPi;
  cov = to_gamma * cov * to_gamma;

  LorentzianFit out;
  out.f0_fit = p[0];
  out.gamma_fit = 2.0 * kPi * p[1];
  out.area = p[2];
  out.white_floor = p[3];
  out.covariance = cov;
  out.iterations = iter;
  out.chi2_reduced = (w * (y - model).square()).sum() / static_cast<double>(f.size() - 4);
  if (osc) {
    out.T_m = mode_temperature(out, *osc);
    out.sigma_T_m = out.T_m * std::sqrt(cov(2, 2)) / out.area;
  }
  return out;
}

std::vector<LorentzianFit> fit_lorentzian_batch(std::span<const SpectrumRecord> spectra, const FitOptions& options,
                                                unsigned threads) {
  std::vector<LorentzianFit> results(spectra.size());
  std::vector<std::exception_ptr> errors(spectra.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, spectra.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < spectra.size(); i = next++) {
        try {
          results[i] = fit_lorentzian(spectra[i], options);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

double mode_temperature(const LorentzianFit& fit, const OscillatorParams& osc) {
  osc.validate();
  return osc.m * osc.omega0 * osc.omega0 * fit.area / kConstants.k_B;
}

}  // namespace cslbound
