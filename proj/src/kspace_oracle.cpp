#include "cslbound/kspace_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "cslbound/errors.hpp"
#include "cslbound/quadrature.hpp"

namespace cslbound {

namespace {

// exp(-x^2) underflows to zero past this.
constexpr double kGaussianCutoff = 27.3;

double m0_squared() { return kConstants.m0 * kConstants.m0; }

double prefactor(const CslParameters& params) {
  const double r = params.r_C;
  return std::pow(4.0 * kPi, 1.5) * params.lambda * r * r * r / m0_squared();
}

struct KGrid {
  Eigen::ArrayXd k;
  Eigen::ArrayXd w;
};

/// Composite Gauss-Legendre on [0, k_cut] with panels narrow enough for a
/// phase length `span` and the Gaussian scale r_C.
KGrid k_grid(double r, double span, const KSpaceSpec& spec) {
  const double k_cut = std::min(spec.k_max_factor, kGaussianCutoff) / r;
  double width = std::min(kPi / std::max(span, 1e-300), 1.0 / r) / spec.panel_refinement;
  const long panels = std::max<long>(4, static_cast<long>(std::ceil(k_cut / width)));
  if (panels > 50'000'000L) throw ConvergenceError("k-space grid too fine for this geometry and r_C");
  width = k_cut / static_cast<double>(panels);
  const GaussLegendreRule rule = gauss_legendre(spec.nodes_per_panel);
  const long n = panels * rule.size();
  KGrid g{Eigen::ArrayXd(n), Eigen::ArrayXd(n)};
  for (long p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (int i = 0; i < rule.size(); ++i) {
      g.k[p * rule.size() + i] = mid + 0.5 * width * rule.nodes[i];
      g.w[p * rule.size() + i] = 0.5 * width * rule.weights[i];
    }
  }
  return g;
}

/// (sin x - x cos x), with its Taylor series where the difference cancels.
Eigen::ArrayXd sphere_kernel(const Eigen::ArrayXd& x) {
  Eigen::ArrayXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x[i];
    if (v < 0.1) {
      // sum (-1)^{n+1} 2n x^{2n+1} / (2n+1)!
      const double v2 = v * v;
      double term = v * v2 / 3.0;  // n = 1
      double sum = term;
      for (int n = 2; n < 10; ++n) {
        term *= -v2 * n / ((n - 1.0) * (2.0 * n) * (2.0 * n + 1.0));
        sum += term;
      }
      out[i] = sum;
    } else {
      out[i] = std::sin(v) - v * std::cos(v);
    }
  }
  return out;
}

/// Form factor of a homogeneous ball without density: 4 pi (sin kR - kR cos kR)/k^3.
Eigen::ArrayXd ball_form_factor(const Eigen::ArrayXd& k, double radius) {
  return 4.0 * kPi * sphere_kernel(k * radius) / k.cube();
}

/// (1/pi) Int_0^inf e^{-k^2 r^2} cos(k d) 4 sin(k h_a) sin(k h_b) k^{2 power - 2} dk,
/// power 1 for a z axis (k_z^2 weighting), 0 for a transverse axis.
double axis_factor(double d, double h_a, double h_b, double r, bool z_axis, const KSpaceSpec& spec) {
  const KGrid g = k_grid(r, std::abs(d) + h_a + h_b, spec);
  Eigen::ArrayXd f = (-(g.k * r).square()).exp() * (g.k * d).cos() * 4.0 * (g.k * h_a).sin() *
                     (g.k * h_b).sin();
  if (!z_axis) f /= g.k.square();
  return (g.w * f).sum() / kPi;
}

/// (j1(x)/x, j2(x)) with series at small x.
std::pair<double, double> bessel_ratios(double x) {
  if (x < 1e-2) {
    const double x2 = x * x;
    return {1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0, x2 / 15.0 - x2 * x2 / 210.0};
  }
  const double s = std::sin(x), c = std::cos(x);
  const double j1 = s / (x * x) - c / x;
  const double j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
  return {j1 / x, j2};
}

}  // namespace

double kspace_sphere_self(const Sphere& sphere, const CslParameters& params, const KSpaceSpec& spec) {
  Sphere copy = sphere;
  copy.center.setZero();
  return kspace_sphere_pair(copy, copy, params, spec);
}

double kspace_sphere_pair(const Sphere& a, const Sphere& b, const CslParameters& params,
                          const KSpaceSpec& spec) {
  params.validate();
  a.validate();
  b.validate();
  const double r = params.r_C;
  const Eigen::Vector3d sep = a.center - b.center;
  const double d = sep.norm();
  const double dz2 = d > 0.0 ? (sep.z() / d) * (sep.z() / d) : 0.0;
  const KGrid g = k_grid(r, d + a.radius + b.radius, spec);
  const Eigen::ArrayXd fa = ball_form_factor(g.k, a.radius) * a.density;
  const Eigen::ArrayXd fb = ball_form_factor(g.k, b.radius) * b.density;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < g.k.size(); ++i) {
    const double k = g.k[i];
    const auto [j1x, j2] = bessel_ratios(k * d);
    // Int dOmega khat_z^2 cos(k . d) = 4 pi [j1(kd)/(kd) - dz^2 j2(kd)]
    const double angular = 4.0 * kPi * (j1x - dz2 * j2);
    sum += g.w[i] * std::pow(k, 4) * std::exp(-k * k * r * r) * fa[i] * fb[i] * angular;
  }
  return prefactor(params) * sum / std::pow(2.0 * kPi, 3);
}

double kspace_cuboid_pair(const Cuboid& a, const Cuboid& b, const CslParameters& params,
                          const KSpaceSpec& spec) {
  params.validate();
  a.validate();
  b.validate();
  const double r = params.r_C;
  const Eigen::Vector3d d = a.center() - b.center();
  const Eigen::Vector3d ha = 0.5 * a.size(), hb = 0.5 * b.size();
  double product = 1.0;
  for (int axis = 0; axis < 3; ++axis)
    product *= axis_factor(d[axis], ha[axis], hb[axis], r, axis == 2, spec);
  return prefactor(params) * a.density * b.density * product;
}

double kspace_sphere_cuboid(const Sphere& sphere, const Cuboid& cuboid, const CslParameters& params,
                            const KSpaceSpec& spec) {
  params.validate();
  sphere.validate();
  cuboid.validate();
  const double r = params.r_C;
  const double R = sphere.radius;
  const double dz = sphere.center.z() - cuboid.center().z();
  const double H = 0.5 * cuboid.size().z();

  // k_z weights without the chord factor: e^{-k^2 r^2} 4 cos(k dz) sin(k H) / pi.
  const KGrid g = k_grid(r, std::abs(dz) + H + R, spec);
  const Eigen::ArrayXd base = g.w * (-(g.k * r).square()).exp() * (g.k * dz).cos() * 4.0 *
                              (g.k * H).sin() / kPi;

  // Disc point at rho = R sin(alpha): chord half-length R cos(alpha), area
  // element R^2 sin(alpha) cos(alpha) d(alpha) d(phi).
  const double two_r = 2.0 * r;
  const auto blur = [two_r](double lo, double hi, double x) {
    const double a = (hi - x) / two_r, b = (lo - x) / two_r;
    if (a > 0.0 && b > 0.0) return 0.5 * (std::erfc(b) - std::erfc(a));
    if (a < 0.0 && b < 0.0) return 0.5 * (std::erfc(-a) - std::erfc(-b));
    return 0.5 * (std::erf(a) - std::erf(b));
  };
  const std::vector<double> alpha_edges =
      geometric_edges(0.0, 0.5 * kPi, std::min(0.25, std::sqrt(r / R)));
  const std::vector<double> phi_edges = uniform_edges(0.0, 2.0 * kPi, 16);

  const auto estimate = [&](int n) {
    const GaussLegendreRule rule = gauss_legendre(n);
    double total = 0.0;
    for (std::size_t pa = 0; pa + 1 < alpha_edges.size(); ++pa) {
      const double ha = 0.5 * (alpha_edges[pa + 1] - alpha_edges[pa]);
      const double ma = 0.5 * (alpha_edges[pa + 1] + alpha_edges[pa]);
      for (int i = 0; i < n; ++i) {
        const double alpha = ma + ha * rule.nodes[i];
        const double rho = R * std::sin(alpha), chord = R * std::cos(alpha);
        const double kz = (base * (g.k * chord).sin()).sum();
        double ring = 0.0;
        for (std::size_t pp = 0; pp + 1 < phi_edges.size(); ++pp) {
          const double hp = 0.5 * (phi_edges[pp + 1] - phi_edges[pp]);
          const double mp = 0.5 * (phi_edges[pp + 1] + phi_edges[pp]);
          for (int j = 0; j < n; ++j) {
            const double phi = mp + hp * rule.nodes[j];
            const double x = sphere.center.x() + rho * std::cos(phi);
            const double y = sphere.center.y() + rho * std::sin(phi);
            ring += hp * rule.weights[j] * blur(cuboid.lower.x(), cuboid.upper.x(), x) *
                    blur(cuboid.lower.y(), cuboid.upper.y(), y);
          }
        }
        total += ha * rule.weights[i] * R * R * std::sin(alpha) * std::cos(alpha) * kz * ring;
      }
    }
    return total;
  };

  int n = 16;
  double previous = estimate(n);
  while (n < 128) {
    n *= 2;
    const double current = estimate(n);
    if (std::abs(current - previous) <= spec.disc_rel_tol * std::abs(current)) {
      previous = current;
      break;
    }
    previous = current;
  }
  return 2.0 * prefactor(params) * sphere.density * cuboid.density * previous;
}

CollapseStrength eta_kspace_oracle(const ResonatorGeometry& geom, const CslParameters& params,
                                   const KSpaceSpec& spec) {
  geom.validate();
  CollapseStrength out;
  out.params = params;
  out.eta_sphere = kspace_sphere_self(geom.sphere(), params, spec);
  const Cuboid c = geom.cuboid();
  out.eta_cuboid = kspace_cuboid_pair(c, c, params, spec);
  out.eta_mix = kspace_sphere_cuboid(geom.sphere(), c, params, spec);
  out.eta_total = out.eta_sphere + out.eta_cuboid + out.eta_mix;
  return out;
}

double eta_kspace_bodies(std::span<const RigidBody> bodies, const CslParameters& params,
                         const KSpaceSpec& spec) {
  double total = 0.0;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    for (std::size_t j = i; j < bodies.size(); ++j) {
      const double weight = (i == j) ? 1.0 : 2.0;
      const auto* ci = std::get_if<Cuboid>(&bodies[i]);
      const auto* cj = std::get_if<Cuboid>(&bodies[j]);
      const auto* si = std::get_if<Sphere>(&bodies[i]);
      const auto* sj = std::get_if<Sphere>(&bodies[j]);
      if (ci && cj) {
        total += weight * kspace_cuboid_pair(*ci, *cj, params, spec);
      } else if (si && sj) {
        total += weight * kspace_sphere_pair(*si, *sj, params, spec);
      } else {
        total += kspace_sphere_cuboid(si ? *si : *sj, ci ? *ci : *cj, params, spec);
      }
    }
  }
  return total;
}

double eta_kspace_brute_force(std::span<const RigidBody> bodies, const CslParameters& params,
                              const BruteForceSpec& spec) {
  params.validate();
  for (const auto& b : bodies) std::visit([](const auto& body) { body.validate(); }, b);
  const double r = params.r_C;
  const double k_cut = std::min(spec.k_max_factor, kGaussianCutoff) / r;

  const GaussLegendreRule rk = gauss_legendre(spec.k_nodes);
  const GaussLegendreRule rt = gauss_legendre(spec.theta_nodes);
  const GaussLegendreRule rp = gauss_legendre(spec.phi_nodes);
  const double panel = k_cut / spec.k_panels;

  const auto density_ft = [&](const Eigen::Vector3d& k) {
    std::complex<double> sum{0.0, 0.0};
    const double kn = k.norm();
    for (const auto& b : bodies) {
      double amplitude = 0.0;
      Eigen::Vector3d center;
      if (const auto* s = std::get_if<Sphere>(&b)) {
        Eigen::ArrayXd kk(1);
        kk[0] = kn;
        amplitude = s->density * ball_form_factor(kk, s->radius)[0];
        center = s->center;
      } else {
        const auto& c = std::get<Cuboid>(b);
        amplitude = c.density;
        const Eigen::Vector3d size = c.size();
        for (int a = 0; a < 3; ++a) {
          const double x = 0.5 * k[a] * size[a];
          amplitude *= std::abs(x) < 1e-8 ? size[a] : 2.0 * std::sin(x) / k[a];
        }
        center = c.center();
      }
      sum += amplitude * std::polar(1.0, -k.dot(center));
    }
    return sum;
  };

  // Parallel over theta nodes; each worker owns a disjoint slice.
  const int n_theta = rt.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  std::vector<double> partial(workers, 0.0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      double acc = 0.0;
      for (int it = static_cast<int>(w); it < n_theta; it += static_cast<int>(workers)) {
        const double theta = 0.5 * kPi * (rt.nodes[it] + 1.0);
        const double wt = 0.5 * kPi * rt.weights[it] * std::sin(theta);
        const double ct = std::cos(theta), st = std::sin(theta);
        for (int ip = 0; ip < rp.size(); ++ip) {
          const double phi = kPi * (rp.nodes[ip] + 1.0);
          const double wp = kPi * rp.weights[ip];
          const Eigen::Vector3d dir(st * std::cos(phi), st * std::sin(phi), ct);
          double radial = 0.0;
          for (int p = 0; p < spec.k_panels; ++p) {
            for (int i = 0; i < rk.size(); ++i) {
              const double k = (p + 0.5 * (rk.nodes[i] + 1.0)) * panel;
              const double kz = k * ct;
              radial += 0.5 * panel * rk.weights[i] * k * k * kz * kz * std::exp(-k * k * r * r) *
                        std::norm(density_ft(k * dir));
            }
          }
          acc += wt * wp * radial;
        }
      }
      partial[w] = acc;
    });
  }
  for (auto& t : pool) t.join();
  double total = 0.0;
  for (double v : partial) total += v;
  return prefactor(params) * total / std::pow(2.0 * kPi, 3);
}

}  // namespace cslbound
