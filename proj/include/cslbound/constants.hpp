#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace cslbound {

/// CODATA 2018 values, SI units. Every formula in the library reads these.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  ///< J s
  double k_B = 1.380649e-23;      ///< J/K
  double m0 = 1.66053906660e-27;  ///< kg, one atomic mass unit
};

inline constexpr PhysicalConstants kConstants{};

inline constexpr double kPi = std::numbers::pi;

/// Collapse rate lambda [1/s] and correlation length r_C [m].
struct CslParameters {
  double lambda = 0.0;
  double r_C = 0.0;

  /// Throws DomainError unless both are strictly positive and finite.
  void validate() const;
  CslParameters with_lambda(double l) const { return {l, r_C}; }
  CslParameters with_r_C(double r) const { return {lambda, r}; }
};

/// A reference point of the lambda-r_C plane. For a bar, lambda_low and
/// lambda_high bound the suggested range; for a point they equal lambda.
struct ReferencePoint {
  std::string name;
  CslParameters params;
  double lambda_low = 0.0;
  double lambda_high = 0.0;
  bool is_bar = false;
};

inline constexpr double kStandardLambda = 2.2e-17;     ///< 1/s
inline constexpr double kOrderOfMagnitudeLambda = 1e-17;
inline constexpr double kStandardRc = 1e-7;             ///< m
inline constexpr double kMatterWaveLambda = 5.0e-6;     ///< 1/s at r_C = 1e-7 m

/// GRW/CSL standard point (both the 2.2e-17 and the 1e-17 variants), the
/// matter-wave interferometry bound, and Adler's two enhanced-rate bars
/// (10^{9 +- 2} at 1e-7 m and 10^{11 +- 2} at 1e-6 m times the standard rate).
std::vector<ReferencePoint> reference_parameter_points();

}  // namespace cslbound
