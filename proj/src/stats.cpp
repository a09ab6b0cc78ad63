#include "cslbound/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

std::vector<TemperaturePoint> TemperatureSeries::selected() const {
  std::vector<TemperaturePoint> out;
  for (const auto& p : points) {
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw DataError("temperature series: sigma must be positive");
    if (p.T_bath > cut_low) out.push_back(p);
  }
  return out;
}

LinearFitResult linear_fit(const TemperatureSeries& series, std::optional<double> fixed_slope) {
  const auto pts = series.selected();
  const int n = static_cast<int>(pts.size());
  if (n < 3) throw InsufficientDataError("linear fit: need at least 3 points above the cut, have " + std::to_string(n));

  const Eigen::Index m = n;
  Eigen::ArrayXd T(m), Tm(m), w(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    T[i] = pts[i].T_bath;
    Tm[i] = pts[i].T_m;
    w[i] = 1.0 / (pts[i].sigma * pts[i].sigma);
  }
  if (!(w.sum() > 0.0) || !std::isfinite(w.sum())) throw DataError("linear fit: zero or infinite total weight");

  LinearFitResult out;
  out.n_points = n;
  if (fixed_slope) {
    out.alpha = *fixed_slope;
    out.T0 = (w * (Tm - out.alpha * T)).sum() / w.sum();
    out.sigma_T0 = 1.0 / std::sqrt(w.sum());
    out.dof = n - 1;
  } else {
    Eigen::MatrixX2d design(m, 2);
    design.col(0) = T.matrix();
    design.col(1).setOnes();
    const Eigen::Matrix2d normal = design.transpose() * w.matrix().asDiagonal() * design;
    const Eigen::Vector2d rhs = design.transpose() * (w * Tm).matrix();
    const Eigen::LDLT<Eigen::Matrix2d> ldlt(normal);
    if (ldlt.info() != Eigen::Success || std::abs(normal.determinant()) <= 0.0)
      throw DataError("linear fit: degenerate design (all temperatures equal?)");
    const Eigen::Vector2d beta = ldlt.solve(rhs);
    const Eigen::Matrix2d cov = normal.inverse();
    out.alpha = beta[0];
    out.T0 = beta[1];
    out.sigma_alpha = std::sqrt(cov(0, 0));
    out.sigma_T0 = std::sqrt(cov(1, 1));
    out.cov_alpha_T0 = cov(0, 1);
    out.dof = n - 2;
  }
  out.chi2_reduced = chi2_reduced(series, out);
  return out;
}

double chi2_reduced(const TemperatureSeries& series, const LinearFitResult& fit) {
  const auto pts = series.selected();
  const int p = fit.sigma_alpha ? 2 : 1;
  const int dof = static_cast<int>(pts.size()) - p;
  if (dof <= 0) throw InsufficientDataError("chi2: no degrees of freedom left");
  double sum = 0.0;
  for (const auto& pt : pts) {
    const double r = (pt.T_m - fit.alpha * pt.T_bath - fit.T0) / pt.sigma;
    sum += r * r;
  }
  return sum / dof;
}

AcceptanceInterval fc_acceptance_interval(double mu, double confidence) {
  if (!(mu >= 0.0)) throw DomainError("Feldman-Cousins: mu must be non-negative");
  if (!(confidence > 0.5 && confidence < 0.9999)) throw DomainError("confidence must lie in (0.5, 0.9999)");
  // For a likelihood-ratio threshold c = exp(-s^2/2) the accepted region is
  // x2 = mu + s above, and below either x1 = mu - s (while x1 >= 0) or the
  // root of mu^2 - 2 mu x = s^2 for x < 0.
  const auto interval = [mu](double s) {
    AcceptanceInterval iv;
    iv.x2 = mu + s;
    if (mu - s >= 0.0) {
      iv.x1 = mu - s;
    } else if (mu > 0.0) {
      iv.x1 = (mu * mu - s * s) / (2.0 * mu);
    } else {
      iv.x1 = -std::numeric_limits<double>::infinity();
    }
    return iv;
  };
  const auto coverage = [&](double s) {
    const AcceptanceInterval iv = interval(s);
    const double lower = std::isinf(iv.x1) ? 0.0 : normal_cdf(iv.x1 - mu);
    return normal_cdf(iv.x2 - mu) - lower;
  };
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (coverage(mid) < confidence ? lo : hi) = mid;
  }
  return interval(0.5 * (lo + hi));
}

FeldmanCousinsBelt::FeldmanCousinsBelt(double confidence, double mu_max, double step)
    : confidence_(confidence), mu_max_(mu_max), step_(step) {
  if (!(mu_max > 0.0 && step > 0.0)) throw DomainError("Feldman-Cousins belt: range and step must be positive");
  const auto count = static_cast<std::size_t>(std::ceil(mu_max / step)) + 1;
  if (count > 50'000'000) throw DomainError("Feldman-Cousins belt: grid too large");
  table_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) table_.push_back(fc_acceptance_interval(i * step, confidence));
}

double FeldmanCousinsBelt::upper_limit(double x) const {
  // x1(mu) is increasing, so the last grid point with x1 <= x brackets the limit.
  const auto it = std::upper_bound(table_.begin(), table_.end(), x,
                                   [](double v, const AcceptanceInterval& iv) { return v < iv.x1; });
  if (it == table_.end())
    throw GridExhaustedError("Feldman-Cousins: belt does not close below mu_max = " + std::to_string(mu_max_));
  if (it == table_.begin()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(it - table_.begin()) - 1;
  double lo = i * step_, hi = (i + 1) * step_;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (fc_acceptance_interval(mid, confidence_).x1 <= x ? lo : hi) = mid;
  }
  return lo;
}

double FeldmanCousinsBelt::lower_limit(double x) const {
  // x2(mu) is increasing; the first grid point with x2 >= x.
  const auto it = std::lower_bound(table_.begin(), table_.end(), x,
                                   [](const AcceptanceInterval& iv, double v) { return iv.x2 < v; });
  if (it == table_.end()) throw GridExhaustedError("Feldman-Cousins: measurement beyond the belt");
  if (it == table_.begin()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(it - table_.begin());
  double lo = (i - 1) * step_, hi = i * step_;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (fc_acceptance_interval(mid, confidence_).x2 < x ? lo : hi) = mid;
  }
  return hi;
}

FcLimit feldman_cousins_upper_limit(double measured, double sigma, double confidence) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(measured))
    throw DomainError("Feldman-Cousins: sigma must be positive and inputs finite");
  const double x = measured / sigma;
  const FeldmanCousinsBelt belt(confidence, std::max(x, 0.0) + 10.0);
  FcLimit out;
  out.measured = measured;
  out.sigma = sigma;
  out.confidence = confidence;
  out.upper_limit = belt.upper_limit(x) * sigma;
  out.lower_limit = belt.lower_limit(x) * sigma;
  return out;
}

}  // namespace cslbound
