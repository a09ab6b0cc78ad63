#include <cmath>
#include <numbers>

#include <doctest.h>

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/heating.hpp"
#include "cslbound/quadrature.hpp"

using namespace cslbound;

namespace {
const OscillatorParams kOsc{3.8e-13, 2.0 * std::numbers::pi * 3084.0, 3.8e4, 0.05};
}

TEST_SUITE("heating") {

TEST_CASE("excess temperature is linear in eta") {
  const double a = delta_T_csl(kOsc, 1e21);
  CHECK(delta_T_csl(kOsc, 3e21) == doctest::Approx(3.0 * a));
  CHECK(delta_T_csl(kOsc, 0.0) == 0.0);
  const double h = kConstants.hbar;
  CHECK(a == doctest::Approx(h * h * kOsc.Q * 1e21 / (2.0 * kConstants.k_B * kOsc.m * kOsc.omega0)));
}

TEST_CASE("mean energy and the high-temperature flag") {
  bool ok = false;
  const double e = mean_energy(kOsc, 1e21, &ok);
  CHECK(ok);
  CHECK(e == doctest::Approx(kConstants.k_B * (kOsc.T_bath + delta_T_csl(kOsc, 1e21))));
  OscillatorParams cold = kOsc;
  cold.T_bath = 1e-9;
  mean_energy(cold, 0.0, &ok);
  CHECK_FALSE(ok);
  CHECK(quantum_temperature(kOsc) == doctest::Approx(kConstants.hbar * kOsc.omega0 / kConstants.k_B));
}

TEST_CASE("one-sided PSD integrates to the position variance") {
  OscillatorParams osc{1e-12, 2.0 * std::numbers::pi * 1e3, 1e4, 0.1};
  const double eta = 1e33;
  const double f0 = 1e3, g = f0 / osc.Q;
  auto s = [&](double f) {
    Eigen::ArrayXd x(1);
    x[0] = f;
    return one_sided_psd_hz(osc, eta, x)[0];
  };
  const auto edges = uniform_edges(f0 - 2000.0 * g, f0 + 2000.0 * g, 400);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) area += adaptive_simpson(s, edges[i], edges[i + 1], 1e-10);
  // Lorentzian tails beyond +-2000 linewidths hold about 1/(pi 2000) of the area
  CHECK(area == doctest::Approx(position_variance(osc, eta)).epsilon(5e-4));
}

TEST_CASE("momentum PSD is m^2 w^2 times the position PSD") {
  Eigen::ArrayXd w(3);
  w << 1e4, 2e4, 3e4;
  const auto q = theoretical_psd(kOsc, 1e20, w);
  const auto p = theoretical_momentum_psd(kOsc, 1e20, w);
  for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(kOsc.m * kOsc.m * w[i] * w[i] * q[i]));
}

TEST_CASE("collapse heating raises the variance by Delta T") {
  const double eta = 5e30;
  const double base = position_variance(kOsc, 0.0);
  CHECK(position_variance(kOsc, eta) / base ==
        doctest::Approx((kOsc.T_bath + delta_T_csl(kOsc, eta)) / kOsc.T_bath));
}

TEST_CASE("invalid oscillator or eta") {
  CHECK_THROWS_AS(delta_T_csl(kOsc, -1.0), DomainError);
  OscillatorParams bad = kOsc;
  bad.Q = 0.0;
  CHECK_THROWS_AS(delta_T_csl(bad, 1.0), DomainError);
  bad = kOsc;
  bad.T_bath = -1.0;
  CHECK_THROWS_AS(mean_energy(bad, 1.0), DomainError);
}

}
