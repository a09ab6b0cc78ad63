#include "cslbound/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace cslbound {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Style {
  const char* color;
  const char* dash;
  double width;
};

Style style_for(Provenance p) {
  switch (p) {
    case Provenance::this_experiment: return {"#1f4e9c", "", 2.5};
    case Provenance::xray: return {"#b03a2e", "8,4", 2.0};
    case Provenance::forecast: return {"#1f4e9c", "2,4", 2.0};
    case Provenance::matter_wave_point: return {"#7d3c98", "", 1.5};
    case Provenance::ghirardi_point: return {"#000000", "", 1.5};
    case Provenance::adler_bar: return {"#239b56", "", 3.0};
  }
  return {"#555555", "", 1.5};
}

}  // namespace

std::string render_exclusion_svg(const ExclusionReport& report, const PlotOptions& opt) {
  // Data range in decades.
  double rlo = std::numeric_limits<double>::infinity(), rhi = -rlo, llo = rlo, lhi = -rlo;
  const auto extend = [&](double r, double l) {
    if (!(r > 0.0 && l > 0.0)) return;
    rlo = std::min(rlo, std::log10(r));
    rhi = std::max(rhi, std::log10(r));
    llo = std::min(llo, std::log10(l));
    lhi = std::max(lhi, std::log10(l));
  };
  for (const auto& c : report.curves)
    for (Eigen::Index i = 0; i < c.r_C_grid.size(); ++i) extend(c.r_C_grid[i], c.lambda_upper[i]);
  for (const auto& p : report.points) {
    extend(p.params.r_C, p.lambda_low);
    extend(p.params.r_C, p.lambda_high);
  }
  if (!std::isfinite(rlo)) {
    rlo = -9;
    rhi = -3;
    llo = -20;
    lhi = 0;
  }
  if (opt.r_min > 0.0) rlo = std::log10(opt.r_min);
  if (opt.r_max > 0.0) rhi = std::log10(opt.r_max);
  if (opt.lambda_min > 0.0) llo = std::log10(opt.lambda_min);
  if (opt.lambda_max > 0.0) lhi = std::log10(opt.lambda_max);
  rlo = std::floor(rlo);
  rhi = std::max(std::ceil(rhi), rlo + 1);
  llo = std::floor(llo);
  lhi = std::max(std::ceil(lhi), llo + 1);

  const double left = 80, right = opt.width - 160, top = 40, bottom = opt.height - 60;
  const auto X = [&](double r) { return left + (std::log10(r) - rlo) / (rhi - rlo) * (right - left); };
  const auto Y = [&](double l) { return bottom - (std::log10(l) - llo) / (lhi - llo) * (bottom - top); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(opt.width) + "\" height=\"" + num(opt.height) +
       "\" viewBox=\"0 0 " + num(opt.width) + " " + num(opt.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(0.5 * (left + right)) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(opt.title) + "</text>\n";
  s += "<defs><clipPath id=\"plot\"><rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" +
       num(right - left) + "\" height=\"" + num(bottom - top) + "\"/></clipPath></defs>\n";

  // Decade grid and tick labels.
  for (int e = static_cast<int>(rlo); e <= static_cast<int>(rhi); ++e) {
    const double x = X(std::pow(10.0, e));
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(top) + "\" x2=\"" + num(x) + "\" y2=\"" + num(bottom) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(bottom + 18) + "\" text-anchor=\"middle\">1e" + std::to_string(e) +
         "</text>\n";
  }
  for (int e = static_cast<int>(llo); e <= static_cast<int>(lhi); ++e) {
    const double y = Y(std::pow(10.0, e));
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(right) + "\" y2=\"" + num(y) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">1e" + std::to_string(e) +
         "</text>\n";
  }
  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) + "\" height=\"" +
       num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + num(0.5 * (left + right)) + "\" y=\"" + num(opt.height - 18) +
       "\" text-anchor=\"middle\">r_C (m)</text>\n";
  s += "<text transform=\"translate(22," + num(0.5 * (top + bottom)) +
       ") rotate(-90)\" text-anchor=\"middle\">lambda (1/s)</text>\n";

  s += "<g clip-path=\"url(#plot)\">\n";
  double legend_y = top + 10;
  std::string legend;
  for (const auto& c : report.curves) {
    const Style st = style_for(c.provenance);
    std::string d;
    for (Eigen::Index i = 0; i < c.r_C_grid.size(); ++i) {
      if (!(c.lambda_upper[i] > 0.0)) continue;
      d += (d.empty() ? "M" : " L") + num(X(c.r_C_grid[i])) + "," + num(Y(c.lambda_upper[i]));
    }
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + st.color + "\" stroke-width=\"" + num(st.width) + "\"";
    if (*st.dash) s += std::string(" stroke-dasharray=\"") + st.dash + "\"";
    s += "/>\n";
    legend += "<line x1=\"" + num(right + 10) + "\" y1=\"" + num(legend_y) + "\" x2=\"" + num(right + 40) +
              "\" y2=\"" + num(legend_y) + "\" stroke=\"" + st.color + "\" stroke-width=\"" + num(st.width) + "\"" +
              (*st.dash ? std::string(" stroke-dasharray=\"") + st.dash + "\"" : std::string()) + "/>\n";
    legend += "<text x=\"" + num(right + 46) + "\" y=\"" + num(legend_y + 4) + "\">" + escape(c.label) + "</text>\n";
    legend_y += 18;
  }
  for (const auto& p : report.points) {
    const double x = X(p.params.r_C);
    if (p.is_bar) {
      const Style st = style_for(Provenance::adler_bar);
      s += "<line x1=\"" + num(x) + "\" y1=\"" + num(Y(p.lambda_low)) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(Y(p.lambda_high)) + "\" stroke=\"" + st.color + "\" stroke-width=\"" + num(st.width) + "\"/>\n";
    } else {
      const Style st = style_for(p.name.rfind("matter", 0) == 0 ? Provenance::matter_wave_point
                                                               : Provenance::ghirardi_point);
      s += "<circle cx=\"" + num(x) + "\" cy=\"" + num(Y(p.params.lambda)) + "\" r=\"4\" fill=\"" + st.color +
           "\"/>\n";
    }
    legend += "<text x=\"" + num(right + 10) + "\" y=\"" + num(legend_y + 4) + "\">" + escape(p.name) + "</text>\n";
    legend_y += 18;
  }
  s += "</g>\n" + legend + "</svg>\n";
  return s;
}

}  // namespace cslbound
