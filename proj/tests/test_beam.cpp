#include <cmath>

#include <doctest.h>

#include "cslbound/beam.hpp"
#include "cslbound/device.hpp"
#include "cslbound/errors.hpp"

using namespace cslbound;

TEST_SUITE("beam") {

TEST_CASE("bare cantilever eigenvalue and effective mass") {
  CHECK(fundamental_eigenvalue(0.0) == doctest::Approx(1.8751040687).epsilon(1e-9));
  const auto mode = solve_fundamental_mode({1e-4, 5e-6, 1e-7, 2330.0, 0.0});
  CHECK(mode.beta_eff == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("heavy tip mass approaches the static deflection shape") {
  // A = x^2 (3L - x) / (2 L^3) gives beta = 33/140
  const CantileverSpec spec{1e-4, 5e-6, 1e-7, 2330.0, 1e6 * 1e-4 * 5e-6 * 1e-7 * 2330.0};
  const auto mode = solve_fundamental_mode(spec);
  CHECK(mode.beta_eff == doctest::Approx(33.0 / 140.0).epsilon(1e-5));
  for (double t : {0.25, 0.5, 0.75}) {
    const double x = t * spec.L;
    CHECK(mode.shape(x) == doctest::Approx(t * t * (3.0 - t) / 2.0).epsilon(1e-5));
  }
}

TEST_CASE("mode shape boundary conditions") {
  const auto mode = solve_fundamental_mode({1e-4, 5e-6, 1e-7, 2330.0, 3e-13});
  CHECK(mode.shape(0.0) == doctest::Approx(0.0));
  CHECK(mode.slope(0.0) == doctest::Approx(0.0));
  CHECK(mode.shape(1e-4) == doctest::Approx(1.0));
  // slope by central differences
  const double x = 4e-5, h = 1e-9;
  CHECK(mode.slope(x) == doctest::Approx((mode.shape(x + h) - mode.shape(x - h)) / (2 * h)).epsilon(1e-6));
  CHECK_THROWS_AS(mode.shape(2e-4), DomainError);
}

TEST_CASE("eigenvalue decreases with tip mass and satisfies the frequency equation") {
  double previous = fundamental_eigenvalue(0.0);
  for (double mu : {0.1, 1.0, 3.0, 30.0}) {
    const double k = fundamental_eigenvalue(mu);
    CHECK(k < previous);
    const double residual = 1.0 + std::cos(k) * std::cosh(k) + mu * k * (std::cos(k) * std::sinh(k) - std::sin(k) * std::cosh(k));
    CHECK(std::abs(residual) < 1e-9);
    previous = k;
  }
}

TEST_CASE("reference device") {
  const auto dev = build_device(reference_device());
  CHECK(dev.mode.beta_eff == doctest::Approx(0.2367).epsilon(2e-3));
  CHECK(dev.mode.kL == doctest::Approx(0.978).epsilon(1e-4));
  CHECK(dev.geometry.R1 == doctest::Approx(2.367e-5).epsilon(1e-3));
  const auto spec = reference_device();
  const double m_s = spec.sphere.mass();
  CHECK(dev.oscillator.m == doctest::Approx(dev.mode.beta_eff * spec.cantilever.beam_mass() + m_s));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(solve_fundamental_mode({-1.0, 5e-6, 1e-7, 2330.0, 0.0}), DomainError);
  CHECK_THROWS_AS(fundamental_eigenvalue(-1.0), DomainError);
  CHECK_THROWS_AS(solve_fundamental_mode({1e-4, 5e-6, 1e-7, 2330.0, -1.0}), DomainError);
}

}
