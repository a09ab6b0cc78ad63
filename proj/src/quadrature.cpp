#include "cslbound/quadrature.hpp"

#include <numbers>

namespace cslbound {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be >= 1");
  GaussLegendreRule rule{Eigen::ArrayXd(n), Eigen::ArrayXd(n)};
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::vector<double> geometric_edges(double a, double b, double first) {
  std::vector<double> edges{a};
  double width = first;
  while (edges.back() + width < b - 0.5 * width) {
    edges.push_back(edges.back() + width);
    width *= 2.0;
  }
  edges.push_back(b);
  return edges;
}

std::vector<double> uniform_edges(double a, double b, int count) {
  std::vector<double> edges(count + 1);
  for (int i = 0; i <= count; ++i) edges[i] = a + (b - a) * i / count;
  edges.back() = b;
  return edges;
}

}  // namespace cslbound
