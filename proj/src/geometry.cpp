#include "cslbound/geometry.hpp"

#include <cmath>
#include <string>

#include "cslbound/constants.hpp"
#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

void require_positive(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

}  // namespace

void Cuboid::validate() const {
  const Eigen::Vector3d s = size();
  require_positive(s.x(), "cuboid size x");
  require_positive(s.y(), "cuboid size y");
  require_positive(s.z(), "cuboid size z");
  require_positive(density, "cuboid density");
}

double Sphere::volume() const { return 4.0 / 3.0 * kPi * radius * radius * radius; }

void Sphere::validate() const {
  require_positive(radius, "sphere radius");
  require_positive(density, "sphere density");
}

RigidBody translated(const RigidBody& body, const Eigen::Vector3d& shift) {
  if (const auto* c = std::get_if<Cuboid>(&body)) {
    return Cuboid{c->lower + shift, c->upper + shift, c->density};
  }
  const auto& s = std::get<Sphere>(body);
  return Sphere{s.center + shift, s.radius, s.density};
}

double mass(const RigidBody& body) {
  return std::visit([](const auto& b) { return b.mass(); }, body);
}

void ResonatorGeometry::validate() const {
  require_positive(R1, "R1");
  require_positive(R2, "R2");
  require_positive(R3, "R3");
  require_positive(R, "sphere radius R");
  require_positive(rho_c, "rho_c");
  require_positive(rho_s, "rho_s");
  if (!(std::isfinite(sphere_gap) && sphere_gap >= 0.0)) {
    throw DomainError("sphere_gap must be non-negative");
  }
}

Cuboid ResonatorGeometry::cuboid() const {
  return {Eigen::Vector3d(0.0, -0.5 * R2, -0.5 * R3), Eigen::Vector3d(R1, 0.5 * R2, 0.5 * R3), rho_c};
}

Sphere ResonatorGeometry::sphere() const {
  return {Eigen::Vector3d(R1 - R, 0.0, R + 0.5 * R3 + sphere_gap), R, rho_s};
}

ResonatorGeometry ResonatorGeometry::with_densities_scaled(double factor) const {
  ResonatorGeometry g = *this;
  g.rho_c *= factor;
  g.rho_s *= factor;
  return g;
}

}  // namespace cslbound
