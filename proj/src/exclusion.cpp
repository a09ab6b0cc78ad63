#include "cslbound/exclusion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

/// Runs body(i) for i in [0, n) on a small pool; rethrows the first error.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void require_grid(const Eigen::ArrayXd& grid) {
  if (grid.size() == 0) throw DomainError("r_C grid is empty");
  if (!(grid.minCoeff() > 0.0)) throw DomainError("r_C grid must be positive");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("r_C grid must be strictly increasing");
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::this_experiment: return "this_experiment";
    case Provenance::xray: return "xray";
    case Provenance::matter_wave_point: return "matter_wave_point";
    case Provenance::ghirardi_point: return "ghirardi_point";
    case Provenance::adler_bar: return "adler_bar";
    case Provenance::forecast: return "forecast";
  }
  return "unknown";
}

Eigen::ArrayXd log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo && n >= 2)) throw DomainError("log grid needs 0 < lo < hi and n >= 2");
  Eigen::ArrayXd g = Eigen::ArrayXd::LinSpaced(n, std::log10(lo), std::log10(hi));
  g = Eigen::pow(10.0, g);
  g[0] = lo;
  g[n - 1] = hi;
  return g;
}

std::vector<HeatingRow> heating_scan(const ResonatorGeometry& geom, const OscillatorParams& osc, double lambda,
                                     const Eigen::ArrayXd& r_C_grid, const QuadSpec& quad, unsigned threads) {
  require_grid(r_C_grid);
  geom.validate();
  osc.validate();
  std::vector<HeatingRow> rows(static_cast<std::size_t>(r_C_grid.size()));
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double r = r_C_grid[static_cast<Eigen::Index>(i)];
    rows[i].r_C = r;
    rows[i].eta = eta_total(geom, {lambda, r}, quad);
    if (!(rows[i].eta.eta_total > 0.0))
      throw ConvergenceError("collapse strength not positive at r_C = " + std::to_string(r));
    rows[i].delta_T = delta_T_csl(osc, rows[i].eta.eta_total);
  });
  return rows;
}

double heating_peak_rC(const ResonatorGeometry& geom, const OscillatorParams& osc, double lo, double hi,
                       double rel_tol) {
  const Eigen::ArrayXd grid = log_grid(lo, hi, 121);
  const auto rows = heating_scan(geom, osc, 1.0, grid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].delta_T > rows[best].delta_T) best = i;
  double a = std::log(grid[static_cast<Eigen::Index>(best == 0 ? 0 : best - 1)]);
  double b = std::log(grid[static_cast<Eigen::Index>(std::min(best + 1, rows.size() - 1))]);
  const auto value = [&](double x) { return delta_T_csl(osc, eta_total(geom, {1.0, std::exp(x)}).eta_total); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = value(c), fd = value(d);
  while (b - a > rel_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = value(d);
    }
  }
  return std::exp(0.5 * (a + b));
}

ExclusionCurve lambda_upper_curve(const ResonatorGeometry& geom, const OscillatorParams& osc, double deltaT_max,
                                  const Eigen::ArrayXd& r_C_grid, std::string label, const QuadSpec& quad,
                                  unsigned threads) {
  if (!(deltaT_max > 0.0) || !std::isfinite(deltaT_max)) throw DomainError("deltaT_max must be positive");
  const auto rows = heating_scan(geom, osc, 1.0, r_C_grid, quad, threads);
  ExclusionCurve curve{r_C_grid, Eigen::ArrayXd(r_C_grid.size()), std::move(label), Provenance::this_experiment};
  for (std::size_t i = 0; i < rows.size(); ++i) curve.lambda_upper[static_cast<Eigen::Index>(i)] = deltaT_max / rows[i].delta_T;
  return curve;
}

ExclusionCurve xray_bound_curve(double anchor_lambda, double anchor_rC, const Eigen::ArrayXd& r_C_grid) {
  if (!(anchor_lambda > 0.0 && anchor_rC > 0.0)) throw DomainError("X-ray anchor must be positive");
  require_grid(r_C_grid);
  return {r_C_grid, anchor_lambda * (r_C_grid / anchor_rC).square(), "xray", Provenance::xray};
}

UpgradeModel build_upgrade(const UpgradeSpec& spec) {
  const FilmLoad& film = spec.film;
  if (!(film.length > 0.0 && film.width > 0.0 && film.thickness > 0.0 && film.density > 0.0))
    throw DomainError("film dimensions and density must be positive");
  if (!(spec.f0_hz > 0.0 && spec.Q > 0.0)) throw DomainError("f0 and Q must be positive");
  CantileverSpec cantilever = spec.cantilever;
  cantilever.tip_mass = film.mass();

  UpgradeModel model;
  model.mode = solve_fundamental_mode(cantilever);
  const RigidCuboidDims dims = rigid_reduction(model.mode, cantilever);

  Cuboid beam;
  beam.lower = Eigen::Vector3d(0.0, -0.5 * dims.R2, -0.5 * dims.R3);
  beam.upper = Eigen::Vector3d(dims.R1, 0.5 * dims.R2, 0.5 * dims.R3);
  beam.density = cantilever.rho_c;
  Cuboid layer;
  layer.lower = Eigen::Vector3d(dims.R1 - film.length, -0.5 * film.width, 0.5 * dims.R3);
  layer.upper = Eigen::Vector3d(dims.R1, 0.5 * film.width, 0.5 * dims.R3 + film.thickness);
  layer.density = film.density;
  model.bodies = {beam, layer};

  model.oscillator.m = model.mode.beta_eff * cantilever.beam_mass() + film.mass();
  model.oscillator.omega0 = 2.0 * kPi * spec.f0_hz;
  model.oscillator.Q = spec.Q;
  model.oscillator.T_bath = 0.0;
  return model;
}

ExclusionCurve forecast_curve(const UpgradeSpec& spec, double deltaT_detectable, const Eigen::ArrayXd& r_C_grid,
                              std::string label, unsigned threads) {
  if (!(deltaT_detectable > 0.0)) throw DomainError("detectable temperature must be positive");
  require_grid(r_C_grid);
  const UpgradeModel model = build_upgrade(spec);
  ExclusionCurve curve{r_C_grid, Eigen::ArrayXd(r_C_grid.size()), std::move(label), Provenance::forecast};
  parallel_for(static_cast<std::size_t>(r_C_grid.size()), threads, [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double eta = eta_bodies(model.bodies, {1.0, r_C_grid[k]});
    curve.lambda_upper[k] = deltaT_detectable / delta_T_csl(model.oscillator, eta);
  });
  return curve;
}

std::optional<double> interpolate_curve(const ExclusionCurve& curve, double r_C) {
  const auto& g = curve.r_C_grid;
  const Eigen::Index n = g.size();
  if (n == 0 || r_C < g[0] || r_C > g[n - 1]) return std::nullopt;
  if (n == 1) return curve.lambda_upper[0];
  const auto* begin = g.data();
  Eigen::Index i = std::upper_bound(begin, begin + n, r_C) - begin;
  i = std::clamp<Eigen::Index>(i, 1, n - 1);
  const double t = std::log(r_C / g[i - 1]) / std::log(g[i] / g[i - 1]);
  return std::exp((1.0 - t) * std::log(curve.lambda_upper[i - 1]) + t * std::log(curve.lambda_upper[i]));
}

double adler_lower_line(const std::vector<ReferencePoint>& bars, double r_C) {
  std::vector<const ReferencePoint*> sorted;
  for (const auto& b : bars)
    if (b.is_bar) sorted.push_back(&b);
  if (sorted.size() < 2) throw DomainError("Adler line needs two bars");
  std::sort(sorted.begin(), sorted.end(),
            [](const ReferencePoint* a, const ReferencePoint* b) { return a->params.r_C < b->params.r_C; });
  const ReferencePoint& a = *sorted.front();
  const ReferencePoint& b = *sorted.back();
  const double slope = std::log(b.lambda_low / a.lambda_low) / std::log(b.params.r_C / a.params.r_C);
  return a.lambda_low * std::pow(r_C / a.params.r_C, slope);
}

ExclusionReport assemble_exclusion_report(const std::vector<ExclusionCurve>& curves,
                                          const std::vector<ReferencePoint>& points) {
  ExclusionReport report;
  std::set<std::string> seen;
  for (const auto& c : curves)
    if (seen.insert(c.label).second) report.curves.push_back(c);
  report.points = points;

  const ExclusionCurve* measured = nullptr;
  for (const auto& c : report.curves)
    if (c.provenance == Provenance::this_experiment) {
      measured = &c;
      break;
    }

  std::vector<ReferencePoint> bars;
  for (const auto& p : points)
    if (p.is_bar) bars.push_back(p);
  if (!measured) return report;

  for (const auto& b : bars) {
    AdlerBarStatus s;
    s.name = b.name;
    s.r_C = b.params.r_C;
    s.lambda_low = b.lambda_low;
    s.lambda_high = b.lambda_high;
    const auto up = interpolate_curve(*measured, b.params.r_C);
    if (!up) continue;
    s.lambda_up = *up;
    const double span = std::log(b.lambda_high / b.lambda_low);
    s.excluded_fraction = std::clamp(std::log(b.lambda_high / *up) / span, 0.0, 1.0);
    s.fully_excluded = *up <= b.lambda_low;
    report.bars.push_back(s);
  }

  if (bars.size() >= 2) {
    double lo = bars.front().params.r_C, hi = lo;
    for (const auto& b : bars) {
      lo = std::min(lo, b.params.r_C);
      hi = std::max(hi, b.params.r_C);
    }
    // Excess of the bound over Adler's lower line, in log units, on the grid
    // points inside the span plus its end points.
    std::vector<double> rs{lo};
    for (Eigen::Index i = 0; i < measured->r_C_grid.size(); ++i)
      if (measured->r_C_grid[i] > lo && measured->r_C_grid[i] < hi) rs.push_back(measured->r_C_grid[i]);
    rs.push_back(hi);
    std::vector<double> excess;
    for (double r : rs) {
      const auto up = interpolate_curve(*measured, r);
      if (!up) return report;
      excess.push_back(std::log(*up / adler_lower_line(bars, r)));
    }
    // Walk down from the top of the span while the bar stays excluded.
    if (excess.back() <= 0.0) {
      std::size_t i = rs.size() - 1;
      while (i > 0 && excess[i - 1] <= 0.0) --i;
      double threshold = rs[i];
      if (i > 0) {
        const double t = excess[i - 1] / (excess[i - 1] - excess[i]);
        threshold = std::exp(std::log(rs[i - 1]) + t * std::log(rs[i] / rs[i - 1]));
      }
      report.adler_threshold_rC = threshold;
    }
  }
  return report;
}

}  // namespace cslbound
