#ifndef ASSOUAD_KIT_SVG_PLOT_HPP
#define ASSOUAD_KIT_SVG_PLOT_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "assouad_kit/closed_form.hpp"
#include "assouad_kit/error.hpp"

namespace akit {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
};

struct PlotFrame {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::string x_label = "theta";
  std::string y_label = "dimension";
  std::string title;
  /// Free text placed in a leading XML comment (e.g. a manifest reference).
  std::string comment;
  int width = 640;
  int height = 420;
};

/// Upper and lower spectrum bounds from box, quasi-Assouad and rho as dashed series.
inline std::vector<PlotSeries> bounds_overlay(double box, double quasi_assouad, double rho, std::size_t samples = 199) {
  require(samples >= 2, "need at least two samples");
  PlotSeries up{"upper bound", {}, {}, true}, lo{"lower bound", {}, {}, true};
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples + 1);
    const auto b = spectrum_bounds(box, quasi_assouad, rho, t);
    up.x.push_back(t);
    up.y.push_back(b.upper);
    lo.x.push_back(t);
    lo.y.push_back(b.lower);
  }
  return {up, lo};
}

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
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

}  // namespace detail

/// Deterministic SVG: identical inputs give byte-identical text.
inline std::string render_svg(const std::vector<PlotSeries>& series, const PlotFrame& frame) {
  if (series.empty()) fail(ErrorKind::empty_set, "empty curve: nothing to plot");
  for (const auto& s : series) {
    if (s.x.empty()) fail(ErrorKind::empty_set, "empty curve '" + s.label + "'");
    require(s.x.size() == s.y.size(), "series '" + s.label + "' has mismatched columns");
    require(s.x.size() >= 2, "series '" + s.label + "' needs at least two samples");
    for (std::size_t i = 0; i < s.x.size(); ++i)
      require(std::isfinite(s.x[i]) && std::isfinite(s.y[i]), "series '" + s.label + "' has non-finite values");
  }
  require(frame.x_max > frame.x_min && frame.y_max > frame.y_min, "empty plot frame");
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  const double left = 60, right = 20, top = 30, bottom = 50;
  const double pw = frame.width - left - right, ph = frame.height - top - bottom;
  auto px = [&](double x) { return left + (x - frame.x_min) / (frame.x_max - frame.x_min) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - frame.y_min) / (frame.y_max - frame.y_min)) * ph; };
  using detail::fmt2;

  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!frame.comment.empty()) o += "<!-- " + detail::xml_escape(frame.comment) + " -->\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(frame.width) + "\" height=\"" +
       std::to_string(frame.height) + "\" viewBox=\"0 0 " + std::to_string(frame.width) + " " +
       std::to_string(frame.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!frame.title.empty())
    o += "<text x=\"" + fmt2(left + pw / 2) + "\" y=\"18\" text-anchor=\"middle\">" + detail::xml_escape(frame.title) +
         "</text>\n";
  o += "<g stroke=\"black\" fill=\"none\">\n";
  o += "<rect x=\"" + fmt2(left) + "\" y=\"" + fmt2(top) + "\" width=\"" + fmt2(pw) + "\" height=\"" + fmt2(ph) + "\"/>\n";
  o += "</g>\n<g fill=\"black\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = frame.x_min + (frame.x_max - frame.x_min) * i / 4.0;
    const double yv = frame.y_min + (frame.y_max - frame.y_min) * i / 4.0;
    o += "<text x=\"" + fmt2(px(xv)) + "\" y=\"" + fmt2(top + ph + 16) + "\" text-anchor=\"middle\">" + fmt2(xv) +
         "</text>\n";
    o += "<text x=\"" + fmt2(left - 6) + "\" y=\"" + fmt2(py(yv) + 4) + "\" text-anchor=\"end\">" + fmt2(yv) +
         "</text>\n";
  }
  o += "<text x=\"" + fmt2(left + pw / 2) + "\" y=\"" + fmt2(frame.height - 10.0) + "\" text-anchor=\"middle\">" +
       detail::xml_escape(frame.x_label) + "</text>\n";
  o += "<text x=\"14\" y=\"" + fmt2(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
       fmt2(top + ph / 2) + ")\">" + detail::xml_escape(frame.y_label) + "</text>\n";
  o += "</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = palette[k % std::size(palette)];
    o += "<polyline data-label=\"" + detail::xml_escape(s.label) + "\" fill=\"none\" stroke=\"" + colour +
         "\" stroke-width=\"1.5\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) o += ' ';
      o += fmt2(px(s.x[i])) + "," + fmt2(py(s.y[i]));
    }
    o += "\"/>\n";
    const double ly = top + 14.0 + 16.0 * static_cast<double>(k);
    o += "<text x=\"" + fmt2(left + pw - 8) + "\" y=\"" + fmt2(ly) + "\" text-anchor=\"end\" fill=\"" + colour + "\">" +
         detail::xml_escape(s.label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

}  // namespace akit

#endif  // ASSOUAD_KIT_SVG_PLOT_HPP
