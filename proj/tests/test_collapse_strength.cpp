#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "cslbound/collapse_strength.hpp"
#include "cslbound/device.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/kspace_oracle.hpp"

using namespace cslbound;

namespace {

ResonatorGeometry reference_geometry() { return build_device(reference_device()).geometry; }

// Sphere term straight from the Fourier definition, angular part done by hand:
// eta = (4 pi)^{3/2} lambda r^3 / m0^2 / (2 pi)^3 (4 pi / 3) Int k^4 e^{-k^2 r^2} |rho(k)|^2 dk.
double sphere_by_radial_k(double R, double rho, double lambda, double r) {
  const double pi = std::numbers::pi;
  auto integrand = [&](double k) {
    if (k == 0.0) return 0.0;
    const double kr = k * R;
    const double ff = kr < 1e-3 ? 4.0 * pi * rho * R * R * R / 3.0 * (1.0 - kr * kr / 10.0)
                                : 4.0 * pi * rho * (std::sin(kr) - kr * std::cos(kr)) / (k * k * k);
    return std::pow(k, 4) * std::exp(-k * k * r * r) * ff * ff;
  };
  // composite Simpson, fine enough for ~150 oscillations of the form factor
  const double kmax = 12.0 / r;
  const int n = 200000;
  const double h = kmax / n;
  double total = integrand(0.0) + integrand(kmax);
  for (int i = 1; i < n; ++i) total += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
  total *= h / 3.0;
  const double m0 = kConstants.m0;
  return std::pow(4.0 * pi, 1.5) * lambda * r * r * r / (m0 * m0) / std::pow(2.0 * pi, 3) * (4.0 * pi / 3.0) * total;
}

}  // namespace

TEST_SUITE("collapse_strength") {

TEST_CASE("sphere closed form matches a hand-rolled radial k integral") {
  const auto g = reference_geometry();
  for (double r : {3e-8, 1e-7, 1e-6, 1e-5}) {
    const CslParameters p{kStandardLambda, r};
    CHECK(eta_sphere(g, p) == doctest::Approx(sphere_by_radial_k(g.R, g.rho_s, p.lambda, r)).epsilon(1e-7));
  }
}

TEST_CASE("closed forms match the k-space oracle") {
  const auto g = reference_geometry();
  for (double r : {1e-8, 1e-7, 1.4e-6, 2e-5, 1e-4}) {
    const CslParameters p{kStandardLambda, r};
    const auto closed = eta_total(g, p);
    const auto oracle = eta_kspace_oracle(g, p);
    CAPTURE(r);
    CHECK(closed.eta_sphere == doctest::Approx(oracle.eta_sphere).epsilon(1e-9));
    CHECK(closed.eta_cuboid == doctest::Approx(oracle.eta_cuboid).epsilon(1e-9));
    CHECK(closed.eta_mix == doctest::Approx(oracle.eta_mix).epsilon(1e-4));
    CHECK(closed.eta_total == doctest::Approx(closed.eta_sphere + closed.eta_cuboid + closed.eta_mix));
  }
}

TEST_CASE("mixing term is negative at small r_C and positive at large r_C") {
  const auto g = reference_geometry();
  CHECK(eta_mix(g, {kStandardLambda, 1e-8}) < 0.0);
  CHECK(eta_mix(g, {kStandardLambda, 1e-4}) > 0.0);
  // far above every size the three terms add coherently: mix -> 2 sqrt(eta_s eta_c)
  const CslParameters far{kStandardLambda, 1e-3};
  const auto s = eta_total(g, far);
  CHECK(s.eta_mix == doctest::Approx(2.0 * std::sqrt(s.eta_sphere * s.eta_cuboid)).epsilon(1e-4));
}

TEST_CASE("literal 5-D mixing integral agrees with the reduced form") {
  const auto g = reference_geometry();
  const CslParameters p{kStandardLambda, 1e-5};
  const double reduced = eta_mix(g, p);
  CHECK(eta_mix_5d(g, p, {24, 12, 6, 24, 24}) == doctest::Approx(reduced).epsilon(1e-4));
  // a third instead of half the thickness shifts the term, but by well under 1%
  const double third = eta_mix_5d(g, p, {24, 12, 6, 24, 24}, g.R3 / 3.0);
  CHECK(third != doctest::Approx(reduced).epsilon(1e-6));
  CHECK(third == doctest::Approx(reduced).epsilon(1e-2));
}

TEST_CASE("spherical-coordinate brute force agrees with the closed-form total") {
  const auto g = reference_geometry();
  const CslParameters p{kStandardLambda, 1e-5};
  BruteForceSpec spec;
  spec.k_panels = 32;
  spec.theta_nodes = 128;
  spec.phi_nodes = 128;
  const auto bodies = g.bodies();
  CHECK(eta_kspace_brute_force(bodies, p, spec) == doctest::Approx(eta_total(g, p).eta_total).epsilon(1e-6));
}

TEST_CASE("small r_C asymptotics") {
  const auto g = reference_geometry();
  const CslParameters p{kStandardLambda, 1e-9};
  const auto a = asymptotic_eta(g, p, AsymptoticRegime::small_rc);
  CHECK(eta_sphere(g, p) / a.eta_sphere == doctest::Approx(1.0).epsilon(2e-3));
  // edges of the 100 nm thickness still contribute at the percent level
  CHECK(eta_cuboid(g, p) / a.eta_cuboid == doctest::Approx(1.0).epsilon(3e-2));
}

TEST_CASE("large r_C asymptotics") {
  const auto g = reference_geometry();
  const CslParameters p{kStandardLambda, 1e-2};
  const auto a = asymptotic_eta(g, p, AsymptoticRegime::large_rc);
  CHECK(eta_sphere(g, p) / a.eta_sphere == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eta_cuboid(g, p) / a.eta_cuboid == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("series branches are continuous at their switch points") {
  // long double evaluation of the direct formulas is accurate there
  for (double u : {1.0 / 25.0 * (1 - 1e-9), 1.0 / 25.0 * (1 + 1e-9), 1e-3, 0.5}) {
    const long double ul = u;
    const long double direct = 1.0L - 2.0L / ul + std::exp(-ul) * (1.0L + 2.0L / ul);
    CHECK(sphere_bracket(u) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-9));
  }
  for (double s : {1e-2 * (1 - 1e-9), 1e-2 * (1 + 1e-9), 3e-3, 0.3}) {
    const long double sl = s;
    const long double direct =
        std::exp(-sl * sl) + std::sqrt(std::numbers::pi_v<long double>) * sl * std::erf(sl) - 1.0L;
    CHECK(cuboid_edge_factor(s) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-10));
  }
  CHECK(sphere_bracket(1e-12) > 0.0);
  CHECK(cuboid_edge_factor(1e-12) == doctest::Approx(1e-24));
}

TEST_CASE("eta scales with density squared and is translation invariant") {
  const auto g = reference_geometry();
  const CslParameters p{kStandardLambda, 2e-7};
  CHECK(eta_total(g.with_densities_scaled(3.0), p).eta_total == doctest::Approx(9.0 * eta_total(g, p).eta_total));
  auto bodies = g.bodies();
  const double direct = eta_bodies(bodies, p);
  CHECK(direct == doctest::Approx(eta_total(g, p).eta_total).epsilon(1e-10));
  for (auto& b : bodies) b = translated(b, Eigen::Vector3d(1e-3, -2e-4, 5e-5));
  CHECK(eta_bodies(bodies, p) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("union of two spheres through the k-space path") {
  const Sphere a{Eigen::Vector3d::Zero(), 1e-6, 5000.0};
  Sphere b = a;
  b.center = Eigen::Vector3d(0.0, 0.0, 2e-6);
  const std::vector<RigidBody> pair{a, b};
  for (double r : {1e-7, 1e-6, 1e-4}) {
    const CslParameters p{kStandardLambda, r};
    CHECK(eta_kspace_bodies(pair, p) ==
          doctest::Approx(2.0 * kspace_sphere_self(a, p) + 2.0 * kspace_sphere_pair(a, b, p)));
  }
  // far above the size the two spheres act as one body of twice the nucleon number
  const CslParameters coherent{kStandardLambda, 1e-4};
  CHECK(eta_kspace_bodies(pair, coherent) == doctest::Approx(4.0 * kspace_sphere_self(a, coherent)).epsilon(1e-3));
  CHECK_THROWS_AS(eta_bodies(pair, coherent), DomainError);
}

TEST_CASE("invalid parameters") {
  const auto g = reference_geometry();
  CHECK_THROWS_AS(eta_total(g, {kStandardLambda, -1e-7}), DomainError);
  CHECK_THROWS_AS(eta_total(g, {0.0, 1e-7}), DomainError);
  CHECK_THROWS_AS(sphere_self_strength(-1.0, 1.0, {1.0, 1.0}), DomainError);
}

}
