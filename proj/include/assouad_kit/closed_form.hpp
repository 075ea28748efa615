#ifndef ASSOUAD_KIT_CLOSED_FORM_HPP
#define ASSOUAD_KIT_CLOSED_FORM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "assouad_kit/error.hpp"
#include "assouad_kit/ifs.hpp"
#include "assouad_kit/roots.hpp"

namespace akit {

struct DimensionEntry {
  double value = 0.0;
  /// Which formula produced the value.
  std::string source;
};

/// Dimensions of one set or measure. Missing entries are unknown, not zero.
struct DimensionReport {
  std::optional<DimensionEntry> lower, hausdorff, box_lower, box_upper, assouad, quasi_assouad;
  std::vector<std::string> warnings;

  /// Entries in lattice order: lower, hausdorff, box_lower, box_upper, assouad.
  std::vector<const std::optional<DimensionEntry>*> chain() const {
    return {&lower, &hausdorff, &box_lower, &box_upper, &assouad};
  }

  /// Checks lower <= hausdorff <= box_lower <= box_upper <= assouad over the entries
  /// present, quasi_assouad <= assouad, and box_upper = 0 => quasi_assouad = 0.
  bool lattice_holds(double tol = 1e-12) const {
    auto c = chain();
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (*c[i] && *c[j] && (*c[i])->value > (*c[j])->value + tol) return false;
    if (quasi_assouad && assouad && quasi_assouad->value > assouad->value + tol) return false;
    if (box_upper && quasi_assouad && box_upper->value <= tol && quasi_assouad->value > tol) return false;
    return true;
  }
};

/// Theta samples and the matching spectrum values.
struct SpectrumCurve {
  enum class Kind { assouad, lower };
  std::vector<double> theta;
  std::vector<double> values;
  Kind kind = Kind::assouad;
  std::string source;
};

/// Evaluates f on `samples` equally spaced points strictly inside (0,1).
inline SpectrumCurve sample_curve(const std::function<double(double)>& f, std::size_t samples,
                                  SpectrumCurve::Kind kind, std::string source) {
  require(samples >= 1, "need at least one theta sample");
  SpectrumCurve c;
  c.kind = kind;
  c.source = std::move(source);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples + 1);
    c.theta.push_back(t);
    c.values.push_back(f(t));
  }
  return c;
}

inline void require_theta(double theta) { require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)"); }

// Self-similar sets and measures

/// The s >= 0 with sum c_i^s = 1.
inline double similarity_dimension(const std::vector<double>& ratios) {
  require(!ratios.empty(), "need at least one ratio");
  for (double c : ratios) require(c > 0.0 && c < 1.0, "ratios must lie in (0,1)");
  return bisect_decreasing_from_zero([&](double s) {
    double sum = 0.0;
    for (double c : ratios) sum += std::pow(c, s);
    return sum - 1.0;
  });
}

struct MeasureDimensions {
  double assouad = 0.0;
  double box = 0.0;
  double lower = 0.0;
  double hausdorff = 0.0;
  std::vector<std::string> warnings;
};

/// Self-similar measure under the strong separation condition.
inline MeasureDimensions self_similar_measure_dimensions(const std::vector<double>& ratios,
                                                         const std::vector<double>& weights,
                                                         bool separation_asserted = true) {
  require(ratios.size() == weights.size(), "ratios/weights length mismatch");
  require(!ratios.empty(), "need at least one map");
  MeasureDimensions out;
  double hi = -INFINITY, lo = INFINITY, num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    require(ratios[i] > 0.0 && ratios[i] < 1.0, "ratios must lie in (0,1)");
    require(weights[i] > 0.0, "weights must be positive");
    const double e = std::log(weights[i]) / std::log(ratios[i]);
    hi = std::max(hi, e);
    lo = std::min(lo, e);
    num += weights[i] * std::log(weights[i]);
    den += weights[i] * std::log(ratios[i]);
  }
  out.assouad = out.box = hi;
  out.lower = lo;
  out.hausdorff = num / den;
  if (!separation_asserted) out.warnings.push_back("strong separation not asserted; formulas may not apply");
  return out;
}

// Bedford-McMullen carpets

inline DimensionReport carpet_dimensions(const CarpetSpec& spec) {
  spec.validate();
  const double lm = std::log(spec.m), ln = std::log(spec.n);
  const double n_all = static_cast<double>(spec.size());
  const double n0 = spec.nonempty_columns();
  const double rho = lm / ln;
  double z = 0.0;
  for (int c : spec.column_counts())
    if (c > 0) z += std::pow(c, rho);
  DimensionReport r;
  const std::string src = "Bedford-McMullen carpet formulas";
  const double a = std::log(n0) / lm + std::log(spec.max_column()) / ln;
  const double b = std::log(n0) / lm + std::log(n_all / n0) / ln;
  r.assouad = {a, src};
  r.quasi_assouad = {a, src};
  r.box_lower = {b, src};
  r.box_upper = {b, src};
  r.hausdorff = {std::log(z) / lm, src};
  r.lower = {std::log(n0) / lm + std::log(spec.min_column()) / ln, src};
  return r;
}

/// Assouad and lower spectra of a carpet at theta.
inline std::pair<double, double> carpet_spectrum(const CarpetSpec& spec, double theta) {
  require_theta(theta);
  spec.validate();
  const double lm = std::log(spec.m), ln = std::log(spec.n);
  const double rho = lm / ln;
  const double n_all = static_cast<double>(spec.size());
  const double n0 = spec.nonempty_columns();
  const double nmax = spec.max_column(), nmin = spec.min_column();
  if (theta >= rho) return {std::log(n0) / lm + std::log(nmax) / ln, std::log(n0) / lm + std::log(nmin) / ln};
  const double b = std::log(n0) / lm + std::log(n_all / n0) / ln;
  const double up = (b - theta * (std::log(n_all / nmax) / lm + std::log(nmax) / ln)) / (1.0 - theta);
  const double down = (b - theta * (std::log(n_all / nmin) / lm + std::log(nmin) / ln)) / (1.0 - theta);
  return {up, down};
}

/// Self-affine measure on a carpet with the very strong separation condition.
inline MeasureDimensions carpet_measure_dimensions(const WeightedMeasureSpec& measure,
                                                   bool separation_asserted = true) {
  require(measure.is_carpet(), "carpet measure required");
  measure.validate();
  const auto& c = measure.carpet();
  const double lm = std::log(c.m), ln = std::log(c.n);
  const auto cols = measure.column_masses();
  double a1 = -INFINITY, a2 = -INFINITY, l1 = INFINITY, l2 = INFINITY, b1 = -INFINITY, b2 = -INFINITY;
  double entropy = 0.0;
  for (std::size_t d = 0; d < c.size(); ++d) {
    const double p = measure.weights[d];
    const double col = cols[static_cast<std::size_t>(c.cells[d].first)];
    a1 = std::max(a1, std::log(1.0 / col) / lm);
    l1 = std::min(l1, std::log(1.0 / col) / lm);
    a2 = std::max(a2, std::log(col / p) / ln);
    l2 = std::min(l2, std::log(col / p) / ln);
    b1 = std::max(b1, std::log(1.0 / col) * (1.0 / lm - 1.0 / ln));
    b2 = std::max(b2, std::log(1.0 / p) / ln);
    entropy -= p * std::log(p);
  }
  double column_entropy = 0.0;
  for (double q : cols)
    if (q > 0.0) column_entropy -= q * std::log(q);
  MeasureDimensions out;
  out.assouad = a1 + a2;
  out.lower = l1 + l2;
  out.box = b1 + b2;
  // Ledrappier-Young: entropy over log n plus the projected (self-similar) part.
  out.hausdorff = entropy / ln + (ln - lm) / ln * (column_entropy / lm);
  if (!separation_asserted) out.warnings.push_back("very strong separation not asserted; formulas may not apply");
  if (!c.columns_separated()) out.warnings.push_back("carpet has chosen cells in adjacent columns");
  return out;
}

// Worked families

struct LalleyGatzouras {
  DimensionReport report;
  double transition = 1.0;
  std::function<double(double)> assouad_spectrum;
  std::function<double(double)> lower_spectrum;
};

/// The three-map family (x/3, lambda y), (x/3 + 2/3, lambda y), (x/3, lambda y + 1 - lambda).
inline LalleyGatzouras lalley_gatzouras_family(double lambda) {
  require(lambda > 0.0 && lambda <= 1.0 / 3, "lambda must lie in (0, 1/3]");
  LalleyGatzouras out;
  const std::string src = "Lalley-Gatzouras worked family";
  if (std::abs(lambda - 1.0 / 3) <= 1e-15) {
    for (auto* e : {&out.report.lower, &out.report.hausdorff, &out.report.box_lower, &out.report.box_upper,
                    &out.report.assouad, &out.report.quasi_assouad})
      *e = DimensionEntry{1.0, src};
    out.assouad_spectrum = [](double) { return 1.0; };
    out.lower_spectrum = [](double) { return 1.0; };
    return out;
  }
  const double l3 = std::log(3.0), ll = -std::log(lambda), l2 = std::log(2.0);
  const double lower = l2 / l3;
  const double box = l2 / l3 + std::log(1.5) / ll;
  const double assouad = l2 / l3 + l2 / ll;
  out.report.lower = {lower, src};
  out.report.hausdorff = {std::log(std::pow(2.0, -l3 / std::log(lambda)) + 1.0) / l3, src};
  out.report.box_lower = {box, src};
  out.report.box_upper = {box, src};
  out.report.assouad = {assouad, src};
  out.report.quasi_assouad = {assouad, src};
  const double t = l3 / ll;
  out.transition = t;
  out.assouad_spectrum = [=](double theta) {
    require_theta(theta);
    if (theta > t) return assouad;
    return (box - theta * (std::log(1.5) / l3 + l2 / ll)) / (1.0 - theta);
  };
  out.lower_spectrum = [=](double theta) {
    require_theta(theta);
    if (theta > t) return lower;
    return (box - theta) / (1.0 - theta);
  };
  return out;
}

/// Box dimension 1/(1+p) of {0} u {1/n^p}.
inline double sequence_box_dimension(double p) {
  require(p > 0.0, "p must be positive");
  return 1.0 / (1.0 + p);
}

inline double sequence_spectrum(double p, double theta) {
  require(p > 0.0, "p must be positive");
  require_theta(theta);
  return std::min(1.0 / ((1.0 + p) * (1.0 - theta)), 1.0);
}

inline DimensionReport sequence_dimensions(double p) {
  DimensionReport r;
  const std::string src = "polynomial sequence";
  r.box_lower = r.box_upper = DimensionEntry{sequence_box_dimension(p), src};
  r.hausdorff = DimensionEntry{0.0, src};
  r.lower = DimensionEntry{0.0, src};
  r.assouad = r.quasi_assouad = DimensionEntry{1.0, src};
  return r;
}

inline double spiral_box_dimension(double p) {
  require(p > 0.0, "p must be positive");
  return p < 1.0 ? 2.0 / (1.0 + p) : 1.0;
}

inline double spiral_spectrum(double p, double theta) {
  require(p > 0.0, "p must be positive");
  require_theta(theta);
  if (p <= 1.0) return std::min(2.0 / ((1.0 + p) * (1.0 - theta)), 2.0);
  return std::min(1.0 + theta / (p * (1.0 - theta)), 2.0);
}

inline DimensionReport spiral_dimensions(double p) {
  DimensionReport r;
  const std::string src = "polynomial spiral";
  r.box_lower = r.box_upper = DimensionEntry{spiral_box_dimension(p), src};
  r.assouad = r.quasi_assouad = DimensionEntry{2.0, src};
  return r;
}

struct WindingBounds {
  double box_bound;
  double spectrum_bound;
  double sharp_bound;
};

/// Upper bounds on the Holder exponent of a map winding a segment onto the spiral.
inline WindingBounds spiral_winding_alpha_bound(double p, double beta) {
  require(p > 0.0, "p must be positive");
  require(beta >= 1.0, "beta must be >= 1");
  return {(p + 1.0) / 2.0, (p * beta + beta) / (p + 2.0 * beta), p * beta / (p + beta)};
}

struct KleinianDimensions {
  DimensionReport limit_set;
  double measure_assouad = 0.0;
  double measure_lower = 0.0;
};

/// Geometrically finite Kleinian group with Poincare exponent delta; k_min and k_max are
/// the extreme parabolic ranks.
inline KleinianDimensions kleinian_dimensions(double delta, int k_min, int k_max, int d, bool has_parabolic) {
  require(d >= 1, "ambient dimension must be positive");
  require(delta > 0.0 && delta <= d, "delta must lie in (0, d]");
  KleinianDimensions out;
  const std::string src = "Kleinian limit set";
  auto& r = out.limit_set;
  r.hausdorff = r.box_lower = r.box_upper = DimensionEntry{delta, src};
  if (!has_parabolic) {
    r.lower = r.assouad = r.quasi_assouad = DimensionEntry{delta, src};
    out.measure_assouad = out.measure_lower = delta;
    return out;
  }
  require(1 <= k_min && k_min <= k_max && k_max <= d, "parabolic ranks need 1 <= k_min <= k_max <= d");
  require(delta > k_max / 2.0, "delta must exceed k_max / 2");
  r.assouad = DimensionEntry{std::max<double>(k_max, delta), src};
  r.lower = DimensionEntry{std::min<double>(k_min, delta), src};
  out.measure_assouad = std::max(static_cast<double>(k_max), 2.0 * delta - k_min);
  out.measure_lower = std::min(static_cast<double>(k_min), 2.0 * delta - k_max);
  return out;
}

/// Almost sure dimensions of Mandelbrot percolation (conditioned on survival).
inline DimensionReport percolation_theory(int d, int m, double p) {
  require(d >= 1 && m >= 2, "need d >= 1 and m >= 2");
  require(p > 0.0 && p <= 1.0, "p must lie in (0,1]");
  if (p <= std::pow(m, -d)) fail(ErrorKind::invalid_argument, "subcritical: p must exceed m^-d");
  const double s = d + std::log(p) / std::log(m);
  DimensionReport r;
  const std::string src = "Mandelbrot percolation";
  r.hausdorff = r.box_lower = r.box_upper = DimensionEntry{s, src};
  r.quasi_assouad = DimensionEntry{s, src};
  r.assouad = DimensionEntry{static_cast<double>(d), src};
  return r;
}

struct SpectrumBounds {
  double lower;
  double upper;
  double generic;
};

/// General bounds on the Assouad spectrum from box, quasi-Assouad and the phase
/// transition rho, plus the common interpolating form between them.
inline SpectrumBounds spectrum_bounds(double box, double quasi_assouad, double rho, double theta) {
  require(box >= 0.0 && box <= quasi_assouad, "need 0 <= box <= quasi-Assouad");
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0,1)");
  require_theta(theta);
  SpectrumBounds b;
  b.upper = std::min(box / (1.0 - theta), quasi_assouad);
  b.lower = theta < rho ? std::max(box, (1.0 - rho) / (1.0 - theta) * quasi_assouad) : quasi_assouad;
  b.generic = std::min(box + (1.0 - rho) * theta / ((1.0 - theta) * rho) * (quasi_assouad - box), quasi_assouad);
  return b;
}

// Affinity dimension

/// phi^s from singular values sorted in decreasing order.
inline double singular_value_function(const Eigen::VectorXd& sv, double s) {
  const auto d = sv.size();
  if (s <= 0.0) return 1.0;
  if (s >= static_cast<double>(d)) return std::pow(sv.prod(), s / static_cast<double>(d));
  const auto whole = static_cast<Eigen::Index>(std::floor(s));
  double v = 1.0;
  for (Eigen::Index i = 0; i < whole; ++i) v *= sv(i);
  return v * std::pow(sv(whole), s - static_cast<double>(whole));
}

struct AffinityReport {
  double dimension = 0.0;
  /// Root at level k = 1 .. k_max.
  std::vector<double> trace;
};

inline AffinityReport affinity_dimension(const std::vector<Eigen::MatrixXd>& maps, int k_max,
                                         std::size_t cap = std::size_t{1} << 22) {
  require(!maps.empty(), "need at least one matrix");
  require(k_max >= 1, "k_max must be >= 1");
  const auto d = maps.front().rows();
  for (const auto& a : maps) {
    require(a.rows() == d && a.cols() == d, "matrices must be square and equally sized");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    require(svd.singularValues()(0) < 1.0, "matrices must be contractions");
  }
  detail::checked_word_count(maps.size(), k_max, cap);
  AffinityReport out;
  std::vector<Eigen::MatrixXd> level{Eigen::MatrixXd::Identity(d, d)};
  for (int k = 1; k <= k_max; ++k) {
    std::vector<Eigen::MatrixXd> next;
    next.reserve(level.size() * maps.size());
    for (const auto& w : level)
      for (const auto& a : maps) next.push_back(w * a);
    level = std::move(next);
    std::vector<Eigen::VectorXd> svs;
    svs.reserve(level.size());
    for (const auto& w : level) svs.push_back(Eigen::JacobiSVD<Eigen::MatrixXd>(w).singularValues());
    const double root = bisect_decreasing_from_zero([&](double s) {
      double sum = 0.0;
      for (const auto& sv : svs) sum += singular_value_function(sv, s);
      return sum - 1.0;
    });
    out.trace.push_back(root);
  }
  out.dimension = out.trace.back();
  return out;
}

inline std::vector<Eigen::MatrixXd> linear_parts(const IfsSpec& ifs) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& f : ifs.maps) out.push_back(f.matrix());
  return out;
}

}  // namespace akit

#endif  // ASSOUAD_KIT_CLOSED_FORM_HPP
