#pragma once

#include <array>
#include <span>

#include "cslbound/constants.hpp"
#include "cslbound/geometry.hpp"
#include "cslbound/quadrature.hpp"

namespace cslbound {

/// Center-of-mass collapse strength eta [1/(m^2 s)] and its decomposition.
struct CollapseStrength {
  double eta_total = 0.0;
  double eta_sphere = 0.0;
  double eta_cuboid = 0.0;
  double eta_mix = 0.0;
  CslParameters params;
};

/// Closed form for the sphere. For r_C/R > 5 the bracket
/// 1 - 2/u + e^{-u}(1 + 2/u), u = R^2/r_C^2, is summed as its Taylor series.
double eta_sphere(const ResonatorGeometry& geom, const CslParameters& params);

/// Closed form for the cuboid; the factors e^{-s^2} + sqrt(pi) s erf(s) - 1
/// switch to their series below s = 1e-2.
double eta_cuboid(const ResonatorGeometry& geom, const CslParameters& params);

/// Sphere/cuboid cross term from the real-space double-surface integral.
/// Sign is negative when the facing surfaces dominate (small r_C).
double eta_mix(const ResonatorGeometry& geom, const CslParameters& params,
               const QuadSpec& quad = {});

CollapseStrength eta_total(const ResonatorGeometry& geom, const CslParameters& params,
                           const QuadSpec& quad = {});

// Body-level building blocks. Cross terms include both orderings (2 Re).

double sphere_self_strength(double radius, double density, const CslParameters& params);
double cuboid_self_strength(const Eigen::Vector3d& size, double density, const CslParameters& params);
double cuboid_pair_strength(const Cuboid& a, const Cuboid& b, const CslParameters& params);

/// Real-space mixing of a sphere with an axis-aligned cuboid. The cuboid
/// coordinates are integrated in closed form; the sphere surface (u = 1 +
/// cos(theta), phi) by adaptive tensor Gauss-Legendre, graded at both poles.
double sphere_cuboid_mixing(const Sphere& sphere, const Cuboid& cuboid, const CslParameters& params,
                            const QuadSpec& quad = {});

/// eta of an arbitrary union of spheres and cuboids (sphere-sphere cross
/// terms are not supported and raise DomainError).
double eta_bodies(std::span<const RigidBody> bodies, const CslParameters& params,
                  const QuadSpec& quad = {});

/// Literal five-dimensional form of the mixing integral over (x, y, z, theta,
/// phi) with a plain tensor Gauss-Legendre rule of the given order per axis.
/// `exponent_offset` is the z offset of the sphere center above the top face
/// used inside the Gaussian (R3/2 is the geometric value; other offsets are
/// accepted for sensitivity checks). Negative means R3/2.
double eta_mix_5d(const ResonatorGeometry& geom, const CslParameters& params,
                  const std::array<int, 5>& nodes, double exponent_offset = -1.0);

enum class AsymptoticRegime { small_rc, large_rc };

struct AsymptoticStrength {
  double eta_cuboid = 0.0;
  double eta_sphere = 0.0;
};

/// Leading-order forms: r_C^2 surface scaling below the body sizes, and
/// (N/r_C)^2 coherent scaling above them.
AsymptoticStrength asymptotic_eta(const ResonatorGeometry& geom, const CslParameters& params,
                                  AsymptoticRegime regime);

/// e^{-s^2} + sqrt(pi) s erf(s) - 1, cancellation-safe.
double cuboid_edge_factor(double s);

/// 1 - 2/u + e^{-u}(1 + 2/u), cancellation-safe.
double sphere_bracket(double u);

}  // namespace cslbound
