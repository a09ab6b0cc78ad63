#include <cmath>
#include <numbers>

#include <doctest.h>

#include "cslbound/quadrature.hpp"

using namespace cslbound;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto rule = gauss_legendre(n);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    const int deg = 2 * n - 1;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], deg - 1);
    // even power deg-1: integral 2/deg
    CHECK(sum == doctest::Approx(2.0 / deg).epsilon(1e-12));
  }
}

TEST_CASE("nodes are symmetric and sorted") {
  const auto rule = gauss_legendre(33);
  for (int i = 0; i < 33; ++i) CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[32 - i]).epsilon(1e-14));
  CHECK(rule.nodes[16] == doctest::Approx(0.0));
}

TEST_CASE("adaptive composite converges on a peaked integrand") {
  const auto edges = geometric_edges(0.0, 10.0, 1e-3);
  QuadSpec spec;
  spec.rel_tol = 1e-10;
  const double v = adaptive_composite([](double x) { return std::exp(-x * 1e3) * 1e3; }, edges, spec);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adaptive 2-D tensor rule") {
  const auto eu = uniform_edges(0.0, std::numbers::pi, 4);
  const auto ev = uniform_edges(0.0, 1.0, 4);
  QuadSpec spec;
  spec.rel_tol = 1e-12;
  const double v = adaptive_tensor_2d([](double u, double w) { return std::sin(u) * std::exp(w); }, eu, ev, spec);
  CHECK(v == doctest::Approx(2.0 * (std::exp(1.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("non-convergence raises") {
  QuadSpec spec;
  spec.max_nodes = 32;
  spec.rel_tol = 1e-15;
  const auto edges = uniform_edges(0.0, 1.0, 1);
  CHECK_THROWS_AS(adaptive_composite([](double x) { return std::sin(400.0 * x); }, edges, spec), ConvergenceError);
}

TEST_CASE("tensor rule over a 3-D box") {
  const double v = tensor_gauss_legendre<3>([](const std::array<double, 3>& p) { return p[0] * p[1] * p[1] * p[2] * p[2] * p[2]; },
                                            {0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}, {4, 4, 4});
  CHECK(v == doctest::Approx(0.5 * 8.0 / 3.0 * 81.0 / 4.0).epsilon(1e-13));
}

TEST_CASE("adaptive Simpson") {
  CHECK(adaptive_simpson([](double x) { return std::cos(x); }, 0.0, 1.5, 1e-10) ==
        doctest::Approx(std::sin(1.5)).epsilon(1e-10));
}

TEST_CASE("geometric edges cover the interval") {
  const auto e = geometric_edges(2.0, 7.0, 0.01);
  CHECK(e.front() == 2.0);
  CHECK(e.back() == 7.0);
  CHECK(e[1] - e[0] == doctest::Approx(0.01));
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] > e[i - 1]);
}

}
