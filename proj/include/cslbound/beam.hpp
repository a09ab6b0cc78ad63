#pragma once

#include "cslbound/geometry.hpp"

namespace cslbound {

/// Clamped-free Euler-Bernoulli beam with a point mass at the free end.
struct CantileverSpec {
  double L = 0.0;         ///< length, m
  double w = 0.0;         ///< width, m
  double d = 0.0;         ///< thickness, m
  double rho_c = 0.0;     ///< density, kg/m^3
  double tip_mass = 0.0;  ///< kg, may be zero

  double beam_mass() const { return rho_c * L * w * d; }
  void validate() const;
};

/// Fundamental flexural mode normalised to unit free-end displacement.
struct ModeModel {
  double length = 0.0;
  double kL = 0.0;
  double sigma = 0.0;      ///< shape coefficient (cosh kL + cos kL)/(sinh kL + sin kL)
  double norm = 1.0;       ///< raw shape value at the free end
  double beta_eff = 0.0;   ///< (1/L) Int_0^L A^2 dx
  double m_effective = 0.0;  ///< beta_eff m_c + tip_mass, kg
  double omega0 = 0.0;     ///< rad/s, measured input (0 if unset)
  double Q = 0.0;          ///< measured input (0 if unset)

  /// A(x), x in [0, L]; A(0) = A'(0) = 0 and A(L) = 1.
  double shape(double x) const;
  /// dA/dx.
  double slope(double x) const;
};

/// Lowest root of 1 + cos k cosh k + mu k (cos k sinh k - sin k cosh k) = 0,
/// mu = tip_mass / m_c, found by bisection.
double fundamental_eigenvalue(double mu);

/// Solves the mode and integrates beta_eff by adaptive Simpson (rel 1e-8).
ModeModel solve_fundamental_mode(const CantileverSpec& spec);

struct RigidCuboidDims {
  double R1 = 0.0;  ///< beta_eff L
  double R2 = 0.0;  ///< w
  double R3 = 0.0;  ///< d
};

/// Rigid cuboid with the same effective mass as the vibrating beam.
RigidCuboidDims rigid_reduction(const ModeModel& mode, const CantileverSpec& spec);

struct SphereLoad {
  double radius = 0.0;   ///< m
  double density = 0.0;  ///< kg/m^3
  double mass() const;
};

/// m = beta_eff m_c + m_s.
double total_motional_mass(const ModeModel& mode, const CantileverSpec& spec, const SphereLoad& sphere);

}  // namespace cslbound
