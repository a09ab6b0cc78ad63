#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "cslbound/dataset.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/stats.hpp"

using namespace cslbound;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Likelihood-ratio acceptance region of a unit Gaussian with mean mu >= 0, by
// bisection on the ordering threshold. ln R(x) = -(x-mu)^2/2 + (x - max(x,0))^2/2.
std::pair<double, double> brute_acceptance(double mu, double cl) {
  auto log_ratio = [mu](double x) {
    const double best = std::max(x, 0.0);
    return -0.5 * (x - mu) * (x - mu) + 0.5 * (x - best) * (x - best);
  };
  // the region is an interval around the ratio maximum x = mu; find its ends for threshold c
  auto ends = [&](double c) {
    auto edge = [&](double lo_in, double hi_out) {
      for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo_in + hi_out);
        (log_ratio(m) >= c ? lo_in : hi_out) = m;
      }
      return lo_in;
    };
    const double top = mu;
    const double lower = log_ratio(top - 60.0) >= c ? -INFINITY : edge(top, top - 60.0);
    return std::make_pair(lower, edge(top, top + 60.0));
  };
  double c_lo = -50.0, c_hi = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double c = 0.5 * (c_lo + c_hi);
    const auto [a, b] = ends(c);
    const double p = normal_cdf(b - mu) - (std::isinf(a) ? 0.0 : normal_cdf(a - mu));
    (p > cl ? c_lo : c_hi) = c;
  }
  return ends(c_lo);
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("acceptance intervals match an independent likelihood-ratio construction") {
  for (double mu : {0.0, 0.3, 1.0, 2.5, 6.0}) {
    const auto got = fc_acceptance_interval(mu, 0.95);
    const auto [x1, x2] = brute_acceptance(mu, 0.95);
    CAPTURE(mu);
    if (std::isinf(x1)) CHECK(std::isinf(got.x1));
    else CHECK(got.x1 == doctest::Approx(x1).epsilon(1e-6));
    CHECK(got.x2 == doctest::Approx(x2).epsilon(1e-6));
  }
}

TEST_CASE("known upper limits") {
  // x = 0: the mu = 0 band is one-sided; far from the boundary the interval is central
  CHECK(feldman_cousins_upper_limit(0.0, 1.0, 0.95).upper_limit == doctest::Approx(1.96).epsilon(2e-3));
  CHECK(feldman_cousins_upper_limit(0.0, 1.0, 0.90).upper_limit == doctest::Approx(1.645).epsilon(2e-3));
  const auto far = feldman_cousins_upper_limit(8.0, 1.0, 0.95);
  CHECK(far.upper_limit == doctest::Approx(8.0 + 1.959964).epsilon(1e-4));
  CHECK(far.lower_limit == doctest::Approx(8.0 - 1.959964).epsilon(1e-4));
  // scale invariance
  CHECK(feldman_cousins_upper_limit(0.5e-3, 2e-3, 0.95).upper_limit ==
        doctest::Approx(2e-3 * feldman_cousins_upper_limit(0.25, 1.0, 0.95).upper_limit).epsilon(1e-9));
}

TEST_CASE("upper limit is monotone in the measurement and positive for negative x") {
  double previous = 0.0;
  for (double x = -3.0; x <= 3.0; x += 0.5) {
    const double u = feldman_cousins_upper_limit(x, 1.0, 0.95).upper_limit;
    CHECK(u > previous);
    previous = u;
  }
}

TEST_CASE("belt coverage by Monte Carlo") {
  const FeldmanCousinsBelt belt(0.9, 12.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (double mu : {0.0, 0.7, 2.0, 4.0}) {
    int covered = 0;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
      const double x = mu + n01(rng);
      if (belt.lower_limit(x) <= mu && mu <= belt.upper_limit(x)) ++covered;
    }
    CAPTURE(mu);
    CHECK(covered / double(draws) > 0.885);
  }
}

TEST_CASE("a belt that is too short is reported") {
  const FeldmanCousinsBelt belt(0.95, 2.0);
  CHECK_THROWS_AS(belt.upper_limit(1.5), GridExhaustedError);
  CHECK_THROWS_AS(FeldmanCousinsBelt(0.4, 5.0), DomainError);
  CHECK_THROWS_AS(feldman_cousins_upper_limit(0.0, 0.0, 0.95), DomainError);
}

TEST_CASE("weighted linear fits against closed-form normal equations") {
  TemperatureSeries s;
  s.cut_low = 0.02;
  const double T[] = {0.01, 0.03, 0.05, 0.1, 0.2, 0.4};
  const double y[] = {0.5, 0.0336, 0.0547, 0.1011, 0.2038, 0.3977};
  const double e[] = {0.001, 0.001, 0.002, 0.003, 0.006, 0.012};
  for (int i = 0; i < 6; ++i) s.points.push_back({T[i], y[i], e[i]});
  // by hand on the five points above the cut
  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0, Sr = 0;
  for (int i = 1; i < 6; ++i) {
    const double w = 1.0 / (e[i] * e[i]);
    S += w, Sx += w * T[i], Sy += w * y[i], Sxx += w * T[i] * T[i], Sxy += w * T[i] * y[i];
    Sr += w * (y[i] - T[i]);
  }
  const double D = S * Sxx - Sx * Sx;
  const auto free = linear_fit(s);
  CHECK(free.n_points == 5);
  CHECK(free.dof == 3);
  CHECK(free.alpha == doctest::Approx((S * Sxy - Sx * Sy) / D).epsilon(1e-10));
  CHECK(free.T0 == doctest::Approx((Sxx * Sy - Sx * Sxy) / D).epsilon(1e-10));
  CHECK(*free.sigma_alpha == doctest::Approx(std::sqrt(S / D)).epsilon(1e-10));
  CHECK(free.sigma_T0 == doctest::Approx(std::sqrt(Sxx / D)).epsilon(1e-10));
  CHECK(free.cov_alpha_T0 == doctest::Approx(-Sx / D).epsilon(1e-10));
  const auto fixed = linear_fit(s, 1.0);
  CHECK_FALSE(fixed.sigma_alpha.has_value());
  CHECK(fixed.T0 == doctest::Approx(Sr / S).epsilon(1e-12));
  CHECK(fixed.sigma_T0 == doctest::Approx(1.0 / std::sqrt(S)).epsilon(1e-12));
  CHECK(fixed.dof == 4);
  CHECK(chi2_reduced(s, fixed) == doctest::Approx(fixed.chi2_reduced));
}

TEST_CASE("fits need enough good points") {
  TemperatureSeries s;
  s.points = {{0.1, 0.1, 0.01}, {0.2, 0.2, 0.01}};
  CHECK_THROWS_AS(linear_fit(s), InsufficientDataError);
  s.points.push_back({0.3, 0.3, 0.0});
  CHECK_THROWS_AS(linear_fit(s), DataError);
}

TEST_CASE("synthetic dataset model") {
  DatasetSpec spec;
  CHECK(saturated_temperature(spec, 1.0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(saturated_temperature(spec, 1e-4) == doctest::Approx(0.025).epsilon(1e-3));
  spec.T_sat = 0.0;
  spec.T0 = 0.002;
  spec.alpha = 1.1;
  CHECK(saturated_temperature(spec, 0.3) == doctest::Approx(1.1 * 0.3 + 0.002));
  const auto series = synthesize_dataset(spec);
  CHECK(series.points.size() == 25);
  CHECK(series.points.front().T_bath == doctest::Approx(0.008));
  CHECK(series.points.back().T_bath == doctest::Approx(1.0));
  const auto fit = linear_fit(series);
  CHECK(fit.alpha == doctest::Approx(1.1).epsilon(0.05));
}

}
