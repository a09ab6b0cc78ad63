#pragma once

#include <string>

#include "cslbound/exclusion.hpp"

namespace cslbound {

struct PlotOptions {
  double width = 720.0;   ///< px
  double height = 540.0;  ///< px
  /// Axis ranges; zero means fit the data (rounded out to whole decades).
  double r_min = 0.0, r_max = 0.0;
  double lambda_min = 0.0, lambda_max = 0.0;
  std::string title = "CSL exclusion";
};

/// Static log-log SVG of an exclusion report: r_C (m) horizontally, lambda
/// (1/s) vertically, one styled path per curve, markers for points, vertical
/// bars for Adler's ranges.
std::string render_exclusion_svg(const ExclusionReport& report, const PlotOptions& options = {});

}  // namespace cslbound
