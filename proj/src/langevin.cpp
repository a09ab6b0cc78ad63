#include "cslbound/langevin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <random>
#include <thread>

#include <unsupported/Eigen/FFT>

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"

namespace cslbound {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 of (master, index)
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void SimulationSpec::validate() const {
  osc.validate();
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("simulation: eta must be non-negative");
  if (!(dt > 0.0)) throw DomainError("simulation: dt must be positive");
  if (dt > 1.0 / (50.0 * osc.f0()) * (1.0 + 1e-12))
    throw StabilityError("simulation: dt exceeds 1/(50 f0); the oscillation is not resolved");
  const double tau = osc.Q / osc.omega0;
  if (burn_in < 5.0 * tau * (1.0 - 1e-12)) throw DomainError("simulation: burn-in shorter than 5 Q/omega0");
  if (static_cast<double>(n_steps) * dt < 20.0 * tau * (1.0 - 1e-12))
    throw DomainError("simulation: recorded time shorter than 20 Q/omega0");
  if (n_trajectories < 1) throw DomainError("simulation: need at least one trajectory");
  if (welch_segment != 0 && (welch_segment < 16 || (welch_segment & (welch_segment - 1)) != 0 ||
                             welch_segment > n_steps))
    throw DomainError("simulation: Welch segment must be a power of two no longer than the run");
}

int welch_accumulate(const Eigen::ArrayXd& signal, double fs, int segment, Eigen::ArrayXd& sum) {
  const Eigen::Index n = signal.size();
  const int half = segment / 2;
  if (sum.size() != half + 1) sum = Eigen::ArrayXd::Zero(half + 1);
  const Eigen::ArrayXd window =
      0.5 - 0.5 * (2.0 * kPi * Eigen::ArrayXd::LinSpaced(segment, 0.0, segment - 1.0) / segment).cos();
  const double norm = fs * window.square().sum();
  Eigen::FFT<double> fft;
  std::vector<double> buffer(static_cast<std::size_t>(segment));
  std::vector<std::complex<double>> spectrum;
  int count = 0;
  for (Eigen::Index start = 0; start + segment <= n; start += half) {
    const Eigen::ArrayXd piece = signal.segment(start, segment);
    const double mean = piece.mean();
    for (int i = 0; i < segment; ++i) buffer[static_cast<std::size_t>(i)] = (piece[i] - mean) * window[i];
    fft.fwd(spectrum, buffer);
    for (int k = 0; k <= half; ++k) {
      const double scale = (k == 0 || k == half) ? 1.0 : 2.0;
      sum[k] += scale * std::norm(spectrum[static_cast<std::size_t>(k)]) / norm;
    }
    ++count;
  }
  return count;
}

namespace {

struct TrajectoryResult {
  double energy = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
  Eigen::ArrayXd psd_sum;
  int segments = 0;
};

TrajectoryResult run_trajectory(const SimulationSpec& spec, std::uint64_t seed) {
  const OscillatorParams& o = spec.osc;
  const double m = o.m, w2 = o.omega0 * o.omega0, g = o.gamma_m(), dt = spec.dt;
  const double thermal = std::sqrt(2.0 * m * g * kConstants.k_B * o.T_bath * dt);
  const double collapse = kConstants.hbar * std::sqrt(spec.eta * dt);
  const double damp = 1.0 / (1.0 + g * dt);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Start from the thermal state of the bath alone.
  double q = std::sqrt(kConstants.k_B * o.T_bath / (m * w2)) * normal(rng);
  double p = std::sqrt(m * kConstants.k_B * o.T_bath) * normal(rng);
  const auto step = [&] {
    const double xi1 = normal(rng), xi2 = normal(rng);
    p = (p - m * w2 * q * dt + thermal * xi1 + collapse * xi2) * damp;
    q += p * dt / m;
  };

  const long burn = static_cast<long>(std::ceil(spec.burn_in / dt));
  for (long i = 0; i < burn; ++i) step();

  TrajectoryResult out;
  Eigen::ArrayXd trace;
  if (spec.welch_segment > 0) trace.resize(spec.n_steps);
  double e_sum = 0.0, q2_sum = 0.0, p2_sum = 0.0;
  for (long i = 0; i < spec.n_steps; ++i) {
    step();
    q2_sum += q * q;
    p2_sum += p * p;
    e_sum += 0.5 * p * p / m + 0.5 * m * w2 * q * q;
    if (spec.welch_segment > 0) trace[i] = q;
  }
  const auto n = static_cast<double>(spec.n_steps);
  out.energy = e_sum / n;
  out.q2 = q2_sum / n;
  out.p2 = p2_sum / n;
  if (spec.welch_segment > 0) out.segments = welch_accumulate(trace, 1.0 / dt, spec.welch_segment, out.psd_sum);
  return out;
}

}  // namespace

SimulationStats simulate(const SimulationSpec& spec, unsigned threads) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n_trajectories);
  std::vector<TrajectoryResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          results[i] = run_trajectory(spec, split_seed(spec.seed, i));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Reduce in trajectory order so the sums are reproducible.
  SimulationStats stats;
  double e_sum = 0.0, e2_sum = 0.0;
  Eigen::ArrayXd psd_sum;
  int segments = 0;
  for (const auto& r : results) {
    stats.trajectory_energy.push_back(r.energy);
    e_sum += r.energy;
    e2_sum += r.energy * r.energy;
    stats.mean_q2 += r.q2;
    stats.mean_p2 += r.p2;
    if (r.segments > 0) {
      if (psd_sum.size() == 0) psd_sum = Eigen::ArrayXd::Zero(r.psd_sum.size());
      psd_sum += r.psd_sum;
      segments += r.segments;
    }
  }
  const auto count = static_cast<double>(n);
  stats.mean_energy = e_sum / count;
  stats.mean_q2 /= count;
  stats.mean_p2 /= count;
  if (n > 1) {
    const double var = std::max(0.0, (e2_sum - count * stats.mean_energy * stats.mean_energy) / (count - 1.0));
    stats.energy_sem = std::sqrt(var / count);
  }
  if (segments > 0) {
    const double df = 1.0 / (spec.dt * spec.welch_segment);
    stats.psd.freqs = Eigen::ArrayXd::LinSpaced(psd_sum.size(), 0.0, df * static_cast<double>(psd_sum.size() - 1));
    stats.psd.psd = psd_sum / segments;
    stats.psd.n_averages = segments;
  }
  return stats;
}

EffectiveTemperature effective_temperature(const SimulationStats& stats) {
  if (stats.trajectory_energy.empty()) throw InsufficientDataError("effective temperature: no trajectories");
  return {stats.mean_energy / kConstants.k_B, stats.energy_sem / kConstants.k_B};
}

}  // namespace cslbound
