#pragma once

#include <span>

#include "cslbound/collapse_strength.hpp"
#include "cslbound/constants.hpp"
#include "cslbound/geometry.hpp"

namespace cslbound {

/// Radial/axial k-grid controls for the k-space evaluation.
struct KSpaceSpec {
  double k_max_factor = 30.0;  ///< truncation k_max = k_max_factor / r_C
  int nodes_per_panel = 16;    ///< Gauss-Legendre order on each k panel
  /// Panel width is min(pi / D, 1 / r_C) / panel_refinement, where D is the
  /// largest phase length of the integrand.
  double panel_refinement = 1.0;
  double disc_rel_tol = 1e-7;  ///< node doubling target for the disc integral
};

/// Every term computed directly from the Fourier-space definition
///   eta = (4 pi)^{3/2} lambda r_C^3 / m0^2 Int d^3k/(2pi)^3 k_z^2 e^{-k^2 r_C^2} |rho(k)|^2
/// using exact symmetry reductions (angular integral for spheres, Cartesian
/// separability for boxes, transverse Parseval for the sphere/box cross term).
/// Independent of the closed forms in collapse_strength.
CollapseStrength eta_kspace_oracle(const ResonatorGeometry& geom, const CslParameters& params,
                                   const KSpaceSpec& spec = {});

/// Same for an arbitrary union of bodies (all pairs, sphere-sphere included).
double eta_kspace_bodies(std::span<const RigidBody> bodies, const CslParameters& params,
                         const KSpaceSpec& spec = {});

double kspace_sphere_self(const Sphere& sphere, const CslParameters& params, const KSpaceSpec& spec = {});

/// Ordered-pair term Re(rho_a rho_b^*); the cross contribution is twice this
/// and the self term is kspace_cuboid_pair(a, a).
double kspace_cuboid_pair(const Cuboid& a, const Cuboid& b, const CslParameters& params,
                          const KSpaceSpec& spec = {});

/// Ordered-pair term for two spheres (analytic angular integral).
double kspace_sphere_pair(const Sphere& a, const Sphere& b, const CslParameters& params,
                          const KSpaceSpec& spec = {});

/// Full cross contribution 2 Re(rho_c rho_s^*): k_z by quadrature, the
/// transverse directions in real space over the projected sphere disc.
double kspace_sphere_cuboid(const Sphere& sphere, const Cuboid& cuboid, const CslParameters& params,
                            const KSpaceSpec& spec = {});

/// Node counts of the literal spherical-coordinate evaluation.
struct BruteForceSpec {
  int k_panels = 64;
  int k_nodes = 8;       ///< per k panel
  int theta_nodes = 256;
  int phi_nodes = 256;
  double k_max_factor = 30.0;
};

/// Literal 3-D quadrature in spherical k coordinates of |sum of form factors|^2.
/// Only tractable when the bodies are at most a few tens of r_C across.
double eta_kspace_brute_force(std::span<const RigidBody> bodies, const CslParameters& params,
                              const BruteForceSpec& spec = {});

}  // namespace cslbound
