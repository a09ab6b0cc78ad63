#include "cslbound/constants.hpp"

#include <cmath>

#include "cslbound/errors.hpp"

namespace cslbound {

void CslParameters::validate() const {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw DomainError("collapse rate lambda must be positive, got " + std::to_string(lambda));
  }
  if (!(std::isfinite(r_C) && r_C > 0.0)) {
    throw DomainError("correlation length r_C must be positive, got " + std::to_string(r_C));
  }
}

namespace {

ReferencePoint point(std::string name, double lambda, double r_C) {
  return {std::move(name), {lambda, r_C}, lambda, lambda, false};
}

ReferencePoint bar(std::string name, double central, double r_C, double decades) {
  const double spread = std::pow(10.0, decades);
  return {std::move(name), {central, r_C}, central / spread, central * spread, true};
}

}  // namespace

std::vector<ReferencePoint> reference_parameter_points() {
  return {
      point("ghirardi", kStandardLambda, kStandardRc),
      point("ghirardi_order_of_magnitude", kOrderOfMagnitudeLambda, kStandardRc),
      point("matter_wave", kMatterWaveLambda, kStandardRc),
      bar("adler_1e-7m", kStandardLambda * 1e9, 1e-7, 2.0),
      bar("adler_1e-6m", kStandardLambda * 1e11, 1e-6, 2.0),
  };
}

}  // namespace cslbound
