#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cslbound/beam.hpp"
#include "cslbound/collapse_strength.hpp"
#include "cslbound/constants.hpp"
#include "cslbound/geometry.hpp"
#include "cslbound/heating.hpp"

namespace cslbound {

enum class Provenance { this_experiment, xray, matter_wave_point, ghirardi_point, adler_bar, forecast };

std::string_view to_string(Provenance p);

struct ExclusionCurve {
  Eigen::ArrayXd r_C_grid;      ///< m
  Eigen::ArrayXd lambda_upper;  ///< 1/s
  std::string label;
  Provenance provenance = Provenance::this_experiment;
};

/// n points log-spaced over [lo, hi].
Eigen::ArrayXd log_grid(double lo, double hi, int n);

/// One row of a collapse-strength scan at fixed lambda.
struct HeatingRow {
  double r_C = 0.0;
  CollapseStrength eta;
  double delta_T = 0.0;  ///< K
};

/// eta breakdown and Delta T over a grid of r_C; grid points run in parallel.
std::vector<HeatingRow> heating_scan(const ResonatorGeometry& geom, const OscillatorParams& osc, double lambda,
                                     const Eigen::ArrayXd& r_C_grid, const QuadSpec& quad = {},
                                     unsigned threads = 0);

/// r_C maximising Delta T per unit lambda: grid search over [lo, hi] then
/// golden-section refinement in log r_C to relative width `rel_tol`.
double heating_peak_rC(const ResonatorGeometry& geom, const OscillatorParams& osc, double lo = 1e-9,
                       double hi = 1e-3, double rel_tol = 1e-4);

/// lambda_up(r_C) = deltaT_max / Delta T(lambda = 1, r_C).
ExclusionCurve lambda_upper_curve(const ResonatorGeometry& geom, const OscillatorParams& osc, double deltaT_max,
                                  const Eigen::ArrayXd& r_C_grid, std::string label = "this_experiment",
                                  const QuadSpec& quad = {}, unsigned threads = 0);

/// anchor_lambda (r_C / anchor_rC)^2.
ExclusionCurve xray_bound_curve(double anchor_lambda, double anchor_rC, const Eigen::ArrayXd& r_C_grid);

/// Cuboid load (magnetic film) at the free end of the upgraded cantilever.
struct FilmLoad {
  double length = 40e-6;     ///< along the cantilever, m
  double width = 12e-6;      ///< m
  double thickness = 0.2e-6; ///< m
  double density = 15200.0;  ///< kg/m^3 (FePt)
  double mass() const { return length * width * thickness * density; }
};

/// Upgraded setup: diamond cantilever with a FePt film, high Q.
struct UpgradeSpec {
  CantileverSpec cantilever{100e-6, 12e-6, 0.6e-6, 3510.0, 0.0};
  FilmLoad film;
  double f0_hz = 3084.0;
  double Q = 1e7;
};

struct UpgradeModel {
  ModeModel mode;
  std::vector<RigidBody> bodies;  ///< rigid cantilever cuboid, film cuboid on top of its free end
  OscillatorParams oscillator;
};

/// The film is a lumped tip mass for the mode shape; the rigid cantilever is
/// [0, beta L] x [-w/2, w/2] x [-d/2, d/2] and the film sits on its top face,
/// flush with the free end.
UpgradeModel build_upgrade(const UpgradeSpec& spec);

ExclusionCurve forecast_curve(const UpgradeSpec& spec, double deltaT_detectable, const Eigen::ArrayXd& r_C_grid,
                              std::string label = "forecast", unsigned threads = 0);

/// Exclusion status of one Adler bar against the measured curve.
struct AdlerBarStatus {
  std::string name;
  double r_C = 0.0;
  double lambda_low = 0.0;
  double lambda_high = 0.0;
  double lambda_up = 0.0;          ///< measured bound at r_C (log-log interpolated)
  double excluded_fraction = 0.0;  ///< of the bar's log extent
  bool fully_excluded = false;
};

struct ExclusionReport {
  std::vector<ExclusionCurve> curves;
  std::vector<ReferencePoint> points;
  std::vector<AdlerBarStatus> bars;
  /// Smallest r_C from which the measured curve lies below Adler's lower line
  /// over the rest of the bars' span.
  std::optional<double> adler_threshold_rC;
};

/// Log-log interpolation of a curve; nullopt outside its grid.
std::optional<double> interpolate_curve(const ExclusionCurve& curve, double r_C);

/// Adler's lower line: log-log interpolation between the lower ends of the bars
/// (a slope-2 law for the standard bars).
double adler_lower_line(const std::vector<ReferencePoint>& bars, double r_C);

/// Merges curves (deduplicated by label, first wins) and reference points;
/// bars are judged against the first this_experiment curve.
ExclusionReport assemble_exclusion_report(const std::vector<ExclusionCurve>& curves,
                                          const std::vector<ReferencePoint>& points);

}  // namespace cslbound
