#include "cslbound/collapse_strength.hpp"

#include <cmath>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSphereSeriesThreshold = 1.0 / 25.0;  // u = (R/r_C)^2, i.e. r_C/R > 5
constexpr double kEdgeSeriesThreshold = 1e-2;

double m0_squared() { return kConstants.m0 * kConstants.m0; }

/// erf(a) - erf(b) without cancellation when both arguments share a sign.
double erf_difference(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::erfc(b) - std::erfc(a);
  if (a < 0.0 && b < 0.0) return std::erfc(-a) - std::erfc(-b);
  return std::erf(a) - std::erf(b);
}

/// exp(-a^2) - exp(-b^2).
double gaussian_difference(double a, double b) {
  const double a2 = a * a, b2 = b * b;
  if (a2 <= b2) return -std::exp(-a2) * std::expm1(-(b - a) * (b + a));
  return std::exp(-b2) * std::expm1(-(a - b) * (a + b));
}

/// P(s) - P(0) with P'' the unit-normalised kernel exp(-s^2/4r^2)/(2 sqrt(pi) r).
double smoothed_ramp(double s, double r) {
  return 0.5 * s * std::erf(s / (2.0 * r)) + r / kSqrtPi * std::expm1(-s * s / (4.0 * r * r));
}

/// Overlap of two intervals convolved with the 1-D kernel.
double interval_overlap(double a1, double a2, double b1, double b2, double r) {
  return smoothed_ramp(a2 - b1, r) - smoothed_ramp(a1 - b1, r) - smoothed_ramp(a2 - b2, r) +
         smoothed_ramp(a1 - b2, r);
}

/// Same, with both intervals differentiated (face-to-face coupling along z).
double face_overlap(double a1, double a2, double b1, double b2, double r) {
  const auto g = [r](double s) { return std::expm1(-s * s / (4.0 * r * r)); };
  return (g(a1 - b1) - g(a1 - b2) - g(a2 - b1) + g(a2 - b2)) / (2.0 * kSqrtPi * r);
}

}  // namespace

double sphere_bracket(double u) {
  if (u < kSphereSeriesThreshold) {
    // sum_{n>=2} (-1)^n (n-1) u^n / (n+1)!
    double term = u * u / 6.0;  // n = 2
    double sum = term;
    for (int n = 3; n < 40; ++n) {
      // ratio of successive terms: -u (n-1) / ((n-2)(n+1))
      term *= -u * (n - 1.0) / ((n - 2.0) * (n + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return 1.0 - 2.0 / u + std::exp(-u) * (1.0 + 2.0 / u);
}

double cuboid_edge_factor(double s) {
  if (s < kEdgeSeriesThreshold) {
    // sum_{m>=1} (-1)^{m+1} s^{2m} / (m! (2m-1))
    const double s2 = s * s;
    double power = s2, factorial = 1.0, sum = 0.0;
    for (int m = 1; m < 12; ++m) {
      factorial *= m;
      const double term = power / (factorial * (2.0 * m - 1.0));
      sum += (m % 2 == 1) ? term : -term;
      power *= s2;
    }
    return sum;
  }
  return std::expm1(-s * s) + kSqrtPi * s * std::erf(s);
}

double sphere_self_strength(double radius, double density, const CslParameters& params) {
  params.validate();
  if (!(radius > 0.0 && density > 0.0)) throw DomainError("sphere radius and density must be positive");
  const double r = params.r_C;
  const double u = radius * radius / (r * r);
  const double prefactor = 16.0 * kPi * kPi * params.lambda * r * r * radius * radius * density *
                           density / (3.0 * m0_squared());
  return prefactor * sphere_bracket(u);
}

double cuboid_self_strength(const Eigen::Vector3d& size, double density, const CslParameters& params) {
  params.validate();
  if (!(size.minCoeff() > 0.0 && density > 0.0)) throw DomainError("cuboid sizes and density must be positive");
  const double r = params.r_C;
  const double r2 = r * r;
  const double prefactor = 32.0 * params.lambda * r2 * r2 * density * density / m0_squared();
  const double thickness_factor = -std::expm1(-size.z() * size.z() / (4.0 * r2));
  return prefactor * thickness_factor * cuboid_edge_factor(size.y() / (2.0 * r)) *
         cuboid_edge_factor(size.x() / (2.0 * r));
}

double cuboid_pair_strength(const Cuboid& a, const Cuboid& b, const CslParameters& params) {
  params.validate();
  a.validate();
  b.validate();
  const double r = params.r_C;
  const double ix = interval_overlap(a.lower.x(), a.upper.x(), b.lower.x(), b.upper.x(), r);
  const double iy = interval_overlap(a.lower.y(), a.upper.y(), b.lower.y(), b.upper.y(), r);
  const double iz = face_overlap(a.lower.z(), a.upper.z(), b.lower.z(), b.upper.z(), r);
  const double prefactor =
      2.0 * std::pow(4.0 * kPi, 1.5) * params.lambda * r * r * r * a.density * b.density / m0_squared();
  return prefactor * ix * iy * iz;
}

double sphere_cuboid_mixing(const Sphere& sphere, const Cuboid& cuboid, const CslParameters& params,
                            const QuadSpec& quad) {
  params.validate();
  sphere.validate();
  cuboid.validate();
  const double r = params.r_C;
  const double two_r = 2.0 * r;
  const double R = sphere.radius;
  const Eigen::Vector3d& c = sphere.center;
  const Eigen::Vector3d& lo = cuboid.lower;
  const Eigen::Vector3d& hi = cuboid.upper;

  // Integrand over the sphere surface after the cuboid volume integral:
  // (u - 1) Ix Iy Iz with u = 1 + cos(theta).
  const auto integrand = [&](double u, double phi) {
    const double s = std::sqrt(std::max(0.0, u * (2.0 - u)));
    const double x = c.x() + R * s * std::cos(phi);
    const double y = c.y() + R * s * std::sin(phi);
    const double z = c.z() + R * (u - 1.0);
    const double ix = kSqrtPi * r * erf_difference((x - lo.x()) / two_r, (x - hi.x()) / two_r);
    const double iy = kSqrtPi * r * erf_difference((y - lo.y()) / two_r, (y - hi.y()) / two_r);
    const double iz = gaussian_difference((z - hi.z()) / two_r, (z - lo.z()) / two_r);
    return (u - 1.0) * ix * iy * iz;
  };

  // Panels graded toward both poles, where a flat face can touch the sphere.
  const double first = std::min(0.5, r / R);
  std::vector<double> u_edges = geometric_edges(0.0, 1.0, first);
  std::vector<double> upper_half = geometric_edges(0.0, 1.0, first);
  for (auto it = upper_half.rbegin() + 1; it != upper_half.rend(); ++it) u_edges.push_back(2.0 - *it);
  const std::vector<double> phi_edges = uniform_edges(0.0, 2.0 * kPi, 16);

  const double integral = adaptive_tensor_2d(integrand, u_edges, phi_edges, quad);
  const double prefactor = 2.0 * params.lambda * sphere.density * cuboid.density * R * R / m0_squared();
  return prefactor * integral;
}

double eta_sphere(const ResonatorGeometry& geom, const CslParameters& params) {
  geom.validate();
  return sphere_self_strength(geom.R, geom.rho_s, params);
}

double eta_cuboid(const ResonatorGeometry& geom, const CslParameters& params) {
  geom.validate();
  return cuboid_self_strength(Eigen::Vector3d(geom.R1, geom.R2, geom.R3), geom.rho_c, params);
}

double eta_mix(const ResonatorGeometry& geom, const CslParameters& params, const QuadSpec& quad) {
  geom.validate();
  return sphere_cuboid_mixing(geom.sphere(), geom.cuboid(), params, quad);
}

CollapseStrength eta_total(const ResonatorGeometry& geom, const CslParameters& params,
                           const QuadSpec& quad) {
  CollapseStrength out;
  out.params = params;
  out.eta_sphere = eta_sphere(geom, params);
  out.eta_cuboid = eta_cuboid(geom, params);
  out.eta_mix = eta_mix(geom, params, quad);
  out.eta_total = out.eta_sphere + out.eta_cuboid + out.eta_mix;
  return out;
}

double eta_bodies(std::span<const RigidBody> bodies, const CslParameters& params, const QuadSpec& quad) {
  double total = 0.0;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (const auto* c = std::get_if<Cuboid>(&bodies[i])) {
      c->validate();
      total += cuboid_self_strength(c->size(), c->density, params);
    } else {
      const auto& s = std::get<Sphere>(bodies[i]);
      total += sphere_self_strength(s.radius, s.density, params);
    }
    for (std::size_t j = i + 1; j < bodies.size(); ++j) {
      const auto* ci = std::get_if<Cuboid>(&bodies[i]);
      const auto* cj = std::get_if<Cuboid>(&bodies[j]);
      if (ci && cj) {
        total += cuboid_pair_strength(*ci, *cj, params);
      } else if (ci) {
        total += sphere_cuboid_mixing(std::get<Sphere>(bodies[j]), *ci, params, quad);
      } else if (cj) {
        total += sphere_cuboid_mixing(std::get<Sphere>(bodies[i]), *cj, params, quad);
      } else {
        throw DomainError("sphere-sphere cross terms are not supported by the closed-form path");
      }
    }
  }
  return total;
}

double eta_mix_5d(const ResonatorGeometry& geom, const CslParameters& params,
                  const std::array<int, 5>& nodes, double exponent_offset) {
  geom.validate();
  params.validate();
  const double r = params.r_C;
  const double R = geom.R, R1 = geom.R1, R2 = geom.R2, R3 = geom.R3;
  const double gap = geom.sphere_gap;
  const double offset = exponent_offset < 0.0 ? 0.5 * R3 : exponent_offset;
  const double four_r2 = 4.0 * r * r;

  const auto integrand = [&](const std::array<double, 5>& p) {
    const double x = p[0], y = p[1], z = p[2], theta = p[3], phi = p[4];
    const double st = std::sin(theta), ct = std::cos(theta);
    const double linear = (R * (1.0 + ct) + 0.5 * R3 + gap - z) / (2.0 * r * r);
    const double dx = R * st * std::cos(phi) + R1 - R - x;
    const double dy = R * st * std::sin(phi) - y;
    const double dz = R * ct + R + offset + gap - z;
    return st * ct * linear * std::exp(-(dx * dx + dy * dy + dz * dz) / four_r2);
  };
  const double integral = tensor_gauss_legendre<5>(
      integrand, {0.0, -0.5 * R2, -0.5 * R3, 0.0, 0.0}, {R1, 0.5 * R2, 0.5 * R3, kPi, 2.0 * kPi}, nodes);
  return 2.0 * params.lambda * geom.rho_s * geom.rho_c * R * R / m0_squared() * integral;
}

AsymptoticStrength asymptotic_eta(const ResonatorGeometry& geom, const CslParameters& params,
                                  AsymptoticRegime regime) {
  geom.validate();
  params.validate();
  const double r = params.r_C;
  const double lambda = params.lambda;
  if (regime == AsymptoticRegime::small_rc) {
    return {8.0 * kPi * lambda * geom.R1 * geom.R2 * geom.rho_c * geom.rho_c / m0_squared() * r * r,
            16.0 * kPi * kPi * lambda * geom.R * geom.R * geom.rho_s * geom.rho_s / (3.0 * m0_squared()) *
                r * r};
  }
  const double n_cuboid = geom.cuboid().mass() / kConstants.m0;
  const double n_sphere = geom.sphere().mass() / kConstants.m0;
  return {lambda / (2.0 * r * r) * n_cuboid * n_cuboid, lambda / (2.0 * r * r) * n_sphere * n_sphere};
}

}  // namespace cslbound
