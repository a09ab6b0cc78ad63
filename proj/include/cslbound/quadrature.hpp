#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cslbound/errors.hpp"

namespace cslbound {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

GaussLegendreRule gauss_legendre(int n);

/// Node-doubling ladder shared by the adaptive tensor rules. Node counts are
/// totals per axis (panels x nodes per panel).
struct QuadSpec {
  int initial_nodes = 8;   ///< per panel
  int max_nodes = 1024;    ///< per axis, summed over panels
  double rel_tol = 1e-4;
};

/// Composite rule on the panels delimited by `edges`.
template <class F>
double integrate_panels(F&& f, std::span<const double> edges, const GaussLegendreRule& rule) {
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    double panel = 0.0;
    for (int i = 0; i < rule.size(); ++i) panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += half * panel;
  }
  return total;
}

namespace detail {

inline bool converged(double coarse, double fine, double rel_tol) {
  return std::abs(fine - coarse) <= rel_tol * std::abs(fine) ||
         (fine == 0.0 && coarse == 0.0);
}

[[noreturn]] inline void throw_not_converged(const char* what, int nodes, double coarse, double fine) {
  throw ConvergenceError(std::string(what) + ": no convergence with " + std::to_string(nodes) +
                         " nodes per axis (last two estimates " + std::to_string(coarse) + ", " +
                         std::to_string(fine) + ")");
}

}  // namespace detail

/// 1-D composite Gauss-Legendre with per-panel node doubling until two
/// successive estimates agree to spec.rel_tol.
template <class F>
double adaptive_composite(F&& f, std::span<const double> edges, const QuadSpec& spec) {
  const int panels = static_cast<int>(edges.size()) - 1;
  int n = spec.initial_nodes;
  double previous = integrate_panels(f, edges, gauss_legendre(n));
  while (2 * n * panels <= spec.max_nodes) {
    n *= 2;
    const double current = integrate_panels(f, edges, gauss_legendre(n));
    if (detail::converged(previous, current, spec.rel_tol)) return current;
    previous = current;
  }
  detail::throw_not_converged("adaptive_composite", n * panels, previous, previous);
}

/// Tensor-product composite rule of fixed order on a 2-D panel grid.
template <class F>
double integrate_panels_2d(F&& f, std::span<const double> edges_u, std::span<const double> edges_v,
                           const GaussLegendreRule& rule) {
  double total = 0.0;
  const int n = rule.size();
  for (std::size_t pu = 0; pu + 1 < edges_u.size(); ++pu) {
    const double hu = 0.5 * (edges_u[pu + 1] - edges_u[pu]);
    const double mu = 0.5 * (edges_u[pu + 1] + edges_u[pu]);
    for (std::size_t pv = 0; pv + 1 < edges_v.size(); ++pv) {
      const double hv = 0.5 * (edges_v[pv + 1] - edges_v[pv]);
      const double mv = 0.5 * (edges_v[pv + 1] + edges_v[pv]);
      double panel = 0.0;
      for (int i = 0; i < n; ++i) {
        const double u = mu + hu * rule.nodes[i];
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += rule.weights[j] * f(u, mv + hv * rule.nodes[j]);
        panel += rule.weights[i] * row;
      }
      total += hu * hv * panel;
    }
  }
  return total;
}

/// 2-D tensor Gauss-Legendre with node doubling on every panel.
template <class F>
double adaptive_tensor_2d(F&& f, std::span<const double> edges_u, std::span<const double> edges_v,
                          const QuadSpec& spec) {
  const int panels = static_cast<int>(std::max(edges_u.size(), edges_v.size())) - 1;
  int n = spec.initial_nodes;
  double previous = integrate_panels_2d(f, edges_u, edges_v, gauss_legendre(n));
  double current = previous;
  while (2 * n * panels <= spec.max_nodes) {
    n *= 2;
    current = integrate_panels_2d(f, edges_u, edges_v, gauss_legendre(n));
    if (detail::converged(previous, current, spec.rel_tol)) return current;
    previous = current;
  }
  detail::throw_not_converged("adaptive_tensor_2d", n * panels, previous, current);
}

/// Plain tensor-product Gauss-Legendre over an N-dimensional box.
template <std::size_t N, class F>
double tensor_gauss_legendre(F&& f, const std::array<double, N>& lower,
                             const std::array<double, N>& upper, const std::array<int, N>& nodes) {
  std::array<GaussLegendreRule, N> rules;
  for (std::size_t d = 0; d < N; ++d) rules[d] = gauss_legendre(nodes[d]);

  std::array<double, N> half{}, mid{};
  double jacobian = 1.0;
  for (std::size_t d = 0; d < N; ++d) {
    half[d] = 0.5 * (upper[d] - lower[d]);
    mid[d] = 0.5 * (upper[d] + lower[d]);
    jacobian *= half[d];
  }

  std::array<int, N> index{};
  std::array<double, N> point{};
  double total = 0.0;
  while (true) {
    double weight = 1.0;
    for (std::size_t d = 0; d < N; ++d) {
      point[d] = mid[d] + half[d] * rules[d].nodes[index[d]];
      weight *= rules[d].weights[index[d]];
    }
    total += weight * f(point);

    std::size_t d = 0;
    while (d < N && ++index[d] == nodes[d]) index[d++] = 0;
    if (d == N) break;
  }
  return jacobian * total;
}

/// Adaptive Simpson with Richardson correction.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol, int max_depth = 40) {
  struct Rec {
    F& f;
    double operator()(double a, double fa, double m, double fm, double b, double fb, double whole,
                      double tol, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return (*this)(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
             (*this)(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // Seed the absolute tolerance from a coarse 16-panel estimate.
  double coarse = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double x0 = a + (b - a) * i / 16.0, x1 = a + (b - a) * (i + 1) / 16.0;
    coarse += (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
  }
  Rec rec{f};
  return rec(a, fa, m, fm, b, fb, whole, rel_tol * std::abs(coarse), max_depth);
}

/// Panel edges on [a, b] that start at `first` and double in width, so that a
/// feature of width ~first at `a` is resolved.
std::vector<double> geometric_edges(double a, double b, double first);

/// `count` equal panels on [a, b].
std::vector<double> uniform_edges(double a, double b, int count);

}  // namespace cslbound
