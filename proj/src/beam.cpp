#include "cslbound/beam.hpp"

#include <cmath>
#include <string>

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/quadrature.hpp"

namespace cslbound {

namespace {

// Slightly above the bare-beam root 1.8751041 so that mu = 0 is bracketed.
constexpr double kBracketUpper = 1.87511;

double characteristic(double k, double mu) {
  return 1.0 + std::cos(k) * std::cosh(k) + mu * k * (std::cos(k) * std::sinh(k) - std::sin(k) * std::cosh(k));
}

// cosh x - cos x
double cosh_minus_cos(double x) {
  const double a = std::sinh(0.5 * x), b = std::sin(0.5 * x);
  return 2.0 * (a * a + b * b);
}

// sinh x - sin x
double sinh_minus_sin(double x) {
  if (std::abs(x) < 0.1) {
    // 2 (x^3/3! + x^7/7! + x^11/11!)
    const double x3 = x * x * x, x4 = x3 * x;
    return 2.0 * x3 * (1.0 / 6.0 + x4 / 5040.0 + x4 * x4 / 39916800.0);
  }
  return std::sinh(x) - std::sin(x);
}

double raw_shape(double xi, double sigma) { return cosh_minus_cos(xi) - sigma * sinh_minus_sin(xi); }

}  // namespace

void CantileverSpec::validate() const {
  if (!(L > 0.0 && w > 0.0 && d > 0.0 && rho_c > 0.0))
    throw DomainError("cantilever length, width, thickness and density must be positive");
  if (!(tip_mass >= 0.0) || !std::isfinite(tip_mass)) throw DomainError("tip mass must be non-negative");
}

double ModeModel::shape(double x) const {
  if (x < 0.0 || x > length * (1.0 + 1e-12)) throw DomainError("x outside [0, L]");
  return raw_shape(kL * x / length, sigma) / norm;
}

double ModeModel::slope(double x) const {
  const double xi = kL * x / length;
  const double d = std::sinh(xi) + std::sin(xi) - sigma * (std::cosh(xi) - std::cos(xi));
  return d * kL / length / norm;
}

double fundamental_eigenvalue(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("mass ratio must be non-negative");
  double lo = 1e-6, hi = kBracketUpper;
  double f_lo = characteristic(lo, mu), f_hi = characteristic(hi, mu);
  if (f_lo * f_hi > 0.0)
    throw RootNotFoundError("no sign change of the characteristic equation for mu = " + std::to_string(mu));
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = characteristic(mid, mu);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ModeModel solve_fundamental_mode(const CantileverSpec& spec) {
  spec.validate();
  ModeModel mode;
  mode.length = spec.L;
  mode.kL = fundamental_eigenvalue(spec.tip_mass / spec.beam_mass());
  const double k = mode.kL;
  mode.sigma = (std::cosh(k) + std::cos(k)) / (std::sinh(k) + std::sin(k));
  mode.norm = raw_shape(k, mode.sigma);
  // beta = Int_0^1 A(L s)^2 ds
  mode.beta_eff = adaptive_simpson(
      [&mode](double s) {
        const double a = raw_shape(mode.kL * s, mode.sigma) / mode.norm;
        return a * a;
      },
      0.0, 1.0, 1e-8);
  mode.m_effective = mode.beta_eff * spec.beam_mass() + spec.tip_mass;
  return mode;
}

RigidCuboidDims rigid_reduction(const ModeModel& mode, const CantileverSpec& spec) {
  return {mode.beta_eff * spec.L, spec.w, spec.d};
}

double SphereLoad::mass() const {
  if (!(radius >= 0.0 && density >= 0.0)) throw DomainError("sphere radius and density must be non-negative");
  return density * 4.0 / 3.0 * kPi * radius * radius * radius;
}

double total_motional_mass(const ModeModel& mode, const CantileverSpec& spec, const SphereLoad& sphere) {
  return mode.beta_eff * spec.beam_mass() + sphere.mass();
}

}  // namespace cslbound
