#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <doctest.h>

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/heating.hpp"
#include "cslbound/langevin.hpp"

using namespace cslbound;

namespace {

SimulationSpec small_spec(double eta) {
  SimulationSpec s;
  s.osc = {1e-12, 2.0 * std::numbers::pi * 1e3, 10.0, 0.1};
  s.eta = eta;
  s.dt = 1.0 / (200.0 * 1e3);
  s.n_steps = 1 << 16;
  s.n_trajectories = 32;
  s.burn_in = 5.0 * s.osc.Q / s.osc.omega0;
  s.welch_segment = 1 << 12;
  s.seed = 5;
  return s;
}

double eta_for_excess(const OscillatorParams& o, double dT) {
  const double h = kConstants.hbar;
  return dT * 2.0 * kConstants.k_B * o.m * o.omega0 / (h * h * o.Q);
}

}  // namespace

TEST_SUITE("langevin") {

TEST_CASE("equipartition without collapse noise") {
  const auto spec = small_spec(0.0);
  const auto stats = simulate(spec);
  const auto te = effective_temperature(stats);
  CHECK(std::abs(te.T_eff - 0.1) < 3.0 * te.sigma + 0.01 * 0.1);
  const double mw2 = spec.osc.m * spec.osc.omega0 * spec.osc.omega0;
  CHECK(stats.mean_q2 * mw2 == doctest::Approx(stats.mean_p2 / spec.osc.m).epsilon(0.03));
}

TEST_CASE("collapse noise adds its excess independently of the bath") {
  double excess[3];
  int k = 0;
  for (double T : {0.05, 0.1, 0.2}) {
    auto spec = small_spec(0.0);
    spec.osc.T_bath = T;
    spec.eta = eta_for_excess(spec.osc, 0.1);
    const auto te = effective_temperature(simulate(spec));
    excess[k++] = te.T_eff - T;
    CHECK(std::abs(te.T_eff - T - 0.1) < 3.0 * te.sigma + 0.015 * (T + 0.1));
  }
  CHECK(excess[0] == doctest::Approx(excess[2]).epsilon(0.1));
}

TEST_CASE("results depend only on the seed") {
  auto spec = small_spec(1e33);
  spec.n_trajectories = 6;
  const auto a = simulate(spec, 1);
  const auto b = simulate(spec, 3);
  CHECK(a.trajectory_energy == b.trajectory_energy);
  CHECK((a.psd.psd == b.psd.psd).all());
  spec.seed = 6;
  CHECK(simulate(spec, 2).trajectory_energy != a.trajectory_energy);
}

TEST_CASE("split seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m : {0u, 1u})
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(split_seed(m, i));
  CHECK(seen.size() == 2000);
}

TEST_CASE("Welch estimate of white noise") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 2.0);
  Eigen::ArrayXd x(1 << 18);
  for (auto& v : x) v = n(rng);
  const int seg = 1 << 10;
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(seg / 2 + 1);
  const double fs = 1000.0;
  const int count = welch_accumulate(x, fs, seg, sum);
  CHECK(count == 2 * (x.size() / seg) - 1);
  const double level = sum.segment(5, seg / 2 - 10).mean() / count;
  CHECK(level == doctest::Approx(2.0 * 4.0 / fs).epsilon(0.02));
}

TEST_CASE("invalid specs") {
  auto s = small_spec(0.0);
  s.dt = 1.0 / (40.0 * 1e3);
  CHECK_THROWS_AS(s.validate(), StabilityError);
  s = small_spec(0.0);
  s.burn_in = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = small_spec(0.0);
  s.n_steps = 1000;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = small_spec(0.0);
  s.welch_segment = 1000;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS_AS(effective_temperature(SimulationStats{}), InsufficientDataError);
}

}
