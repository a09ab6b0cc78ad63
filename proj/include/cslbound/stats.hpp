#pragma once

#include <optional>
#include <vector>

namespace cslbound {

struct TemperaturePoint {
  double T_bath = 0.0;  ///< K
  double T_m = 0.0;     ///< K
  double sigma = 0.0;   ///< K, > 0
};

struct TemperatureSeries {
  std::vector<TemperaturePoint> points;
  double cut_low = 0.025;  ///< K; only T_bath > cut_low enters fits

  std::vector<TemperaturePoint> selected() const;
};

struct LinearFitResult {
  double alpha = 1.0;
  double T0 = 0.0;        ///< K
  double sigma_T0 = 0.0;  ///< K
  std::optional<double> sigma_alpha;  ///< absent when the slope was fixed
  double cov_alpha_T0 = 0.0;
  double chi2_reduced = 0.0;
  int n_points = 0;
  int dof = 0;
};

/// Weighted least squares T_m = alpha T + T0 on the points above the cut,
/// weights 1/sigma^2. With `fixed_slope`, only T0 is fitted.
LinearFitResult linear_fit(const TemperatureSeries& series, std::optional<double> fixed_slope = std::nullopt);

/// Sum w (T_m - alpha T - T0)^2 / (n - p) over the selected points.
double chi2_reduced(const TemperatureSeries& series, const LinearFitResult& fit);

struct FcLimit {
  double measured = 0.0;    ///< K
  double sigma = 0.0;       ///< K
  double confidence = 0.0;
  double upper_limit = 0.0; ///< K
  double lower_limit = 0.0; ///< K, 0 unless the interval is two-sided
};

/// Acceptance interval [x1, x2] of a unit Gaussian with mean mu >= 0 under
/// likelihood-ratio ordering at the given confidence.
struct AcceptanceInterval {
  double x1 = 0.0;  ///< -infinity when the region is unbounded below
  double x2 = 0.0;
};

AcceptanceInterval fc_acceptance_interval(double mu, double confidence);

/// Confidence belt of the unit-variance Gaussian with mu >= 0, tabulated on a
/// mu grid [0, mu_max] with spacing `step` (in sigma units).
class FeldmanCousinsBelt {
 public:
  FeldmanCousinsBelt(double confidence, double mu_max, double step = 1e-3);

  /// Largest mu whose acceptance interval contains x, refined between grid
  /// points by bisection. Throws GridExhaustedError if the belt is still open
  /// at mu_max.
  double upper_limit(double x) const;
  /// Smallest mu whose interval contains x (0 when x is inside the mu = 0 band).
  double lower_limit(double x) const;

  double confidence() const { return confidence_; }
  double mu_max() const { return mu_max_; }

 private:
  double confidence_;
  double mu_max_;
  double step_;
  std::vector<AcceptanceInterval> table_;
};

/// Upper limit for a Gaussian measurement of a non-negative quantity; the mu
/// grid spans [0, measured/sigma + 10] in steps of 0.001 sigma.
FcLimit feldman_cousins_upper_limit(double measured, double sigma, double confidence);

}  // namespace cslbound
