#pragma once

#include <variant>
#include <vector>

#include <Eigen/Core>

namespace cslbound {

/// Axis-aligned homogeneous box.
struct Cuboid {
  Eigen::Vector3d lower = Eigen::Vector3d::Zero();
  Eigen::Vector3d upper = Eigen::Vector3d::Zero();
  double density = 0.0;  ///< kg/m^3

  Eigen::Vector3d size() const { return upper - lower; }
  Eigen::Vector3d center() const { return 0.5 * (upper + lower); }
  double volume() const { return size().prod(); }
  double mass() const { return density * volume(); }
  void validate() const;
};

/// Homogeneous ball.
struct Sphere {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;   ///< m
  double density = 0.0;  ///< kg/m^3

  double volume() const;
  double mass() const { return density * volume(); }
  void validate() const;
};

using RigidBody = std::variant<Cuboid, Sphere>;

RigidBody translated(const RigidBody& body, const Eigen::Vector3d& shift);
double mass(const RigidBody& body);

/// Rigid cuboid (cantilever stand-in) with a sphere resting on the top face of
/// its free end. Frame: cuboid occupies [0,R1] x [-R2/2,R2/2] x [-R3/2,R3/2];
/// the sphere center sits at (R1 - R, 0, R + R3/2 + sphere_gap). Motion is
/// along z.
struct ResonatorGeometry {
  double R1 = 0.0;     ///< cuboid length along x, m
  double R2 = 0.0;     ///< cuboid width along y, m
  double R3 = 0.0;     ///< cuboid thickness along z, m
  double R = 0.0;      ///< sphere radius, m
  double rho_c = 0.0;  ///< cuboid density, kg/m^3
  double rho_s = 0.0;  ///< sphere density, kg/m^3
  double sphere_gap = 0.0;  ///< extra clearance above the top face (0: tangent)

  void validate() const;
  Cuboid cuboid() const;
  Sphere sphere() const;
  std::vector<RigidBody> bodies() const { return {cuboid(), sphere()}; }
  ResonatorGeometry with_densities_scaled(double factor) const;
};

}  // namespace cslbound
