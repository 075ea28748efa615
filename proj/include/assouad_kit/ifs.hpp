#ifndef ASSOUAD_KIT_IFS_HPP
#define ASSOUAD_KIT_IFS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "assouad_kit/error.hpp"
#include "assouad_kit/point_set.hpp"

namespace akit {

enum class MapKind { similarity, affine };

/// x -> A x + t in R^d. `linear` is row-major d x d.
struct AffineMap {
  std::vector<double> linear;
  std::vector<double> translation;
  MapKind kind = MapKind::affine;
  /// Contraction ratio, meaningful for similarities.
  double ratio = 0.0;

  std::size_t dim() const noexcept { return translation.size(); }

  static AffineMap similarity_1d(double ratio, double shift) {
    return {{ratio}, {shift}, MapKind::similarity, std::abs(ratio)};
  }

  static AffineMap diagonal(std::vector<double> scales, std::vector<double> shift) {
    const std::size_t d = scales.size();
    std::vector<double> a(d * d, 0.0);
    for (std::size_t j = 0; j < d; ++j) a[j * d + j] = scales[j];
    bool similar = std::all_of(scales.begin(), scales.end(),
                               [&](double s) { return std::abs(s) == std::abs(scales[0]); });
    return {std::move(a), std::move(shift), similar ? MapKind::similarity : MapKind::affine,
            similar ? std::abs(scales[0]) : 0.0};
  }

  Eigen::MatrixXd matrix() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) a(i, j) = linear[static_cast<std::size_t>(i * d + j)];
    return a;
  }

  double operator_norm() const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix());
    return svd.singularValues()(0);
  }

  void apply(std::span<const double> x, std::span<double> out) const {
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) {
      double s = translation[i];
      for (std::size_t j = 0; j < d; ++j) s += linear[i * d + j] * x[j];
      out[i] = s;
    }
  }

  std::vector<double> fixed_point() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(d, d) - matrix();
    Eigen::VectorXd rhs(d);
    for (Eigen::Index i = 0; i < d; ++i) rhs(i) = translation[static_cast<std::size_t>(i)];
    Eigen::VectorXd x = lhs.partialPivLu().solve(rhs);
    return {x.data(), x.data() + d};
  }
};

struct IfsSpec {
  std::size_t dim = 1;
  std::vector<AffineMap> maps;

  /// Operator-norm contraction ratio per map.
  std::vector<double> ratios() const {
    std::vector<double> out;
    for (const auto& f : maps) out.push_back(f.kind == MapKind::similarity ? f.ratio : f.operator_norm());
    return out;
  }

  double max_ratio() const {
    auto r = ratios();
    return *std::max_element(r.begin(), r.end());
  }

  void validate() const {
    require(dim >= 1, "ambient dimension must be positive");
    require(!maps.empty(), "an IFS needs at least one map");
    for (const auto& f : maps) {
      require(f.translation.size() == dim && f.linear.size() == dim * dim, "map dimension mismatch");
      for (double v : f.linear) require(std::isfinite(v), "non-finite map entry");
      for (double v : f.translation) require(std::isfinite(v), "non-finite map entry");
      const double norm = f.operator_norm();
      require(norm < 1.0, "map is not a contraction (operator norm >= 1)");
      if (f.kind == MapKind::similarity) {
        require(f.ratio > 0.0 && f.ratio < 1.0, "similarity ratio must lie in (0,1)");
        Eigen::MatrixXd a = f.matrix();
        Eigen::MatrixXd gram = a.transpose() * a;
        const auto d = static_cast<Eigen::Index>(dim);
        Eigen::MatrixXd target = f.ratio * f.ratio * Eigen::MatrixXd::Identity(d, d);
        require((gram - target).cwiseAbs().maxCoeff() <= 1e-10,
                "similarity map is not ratio times an orthogonal matrix");
      }
    }
  }

  static IfsSpec similarities_1d(const std::vector<double>& ratios, const std::vector<double>& shifts) {
    require(ratios.size() == shifts.size(), "ratio/shift length mismatch");
    IfsSpec s;
    for (std::size_t i = 0; i < ratios.size(); ++i) s.maps.push_back(AffineMap::similarity_1d(ratios[i], shifts[i]));
    return s;
  }

  /// x/3 and x/3 + 2/3.
  static IfsSpec middle_third_cantor() { return similarities_1d({1.0 / 3, 1.0 / 3}, {0.0, 2.0 / 3}); }
};

/// Bedford-McMullen carpet: the cells (column, row) kept from an m x n grid.
struct CarpetSpec {
  int m = 2;
  int n = 3;
  std::vector<std::pair<int, int>> cells;

  void validate() const {
    require(m > 1 && n > m, "carpet needs n > m > 1");
    require(!cells.empty(), "empty cell set");
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "duplicate carpet cell");
    for (auto [i, j] : cells) require(i >= 0 && i < m && j >= 0 && j < n, "carpet cell out of range");
  }

  std::size_t size() const noexcept { return cells.size(); }

  /// Cells per column, indexed by column.
  std::vector<int> column_counts() const {
    std::vector<int> c(static_cast<std::size_t>(m), 0);
    for (auto [i, j] : cells) ++c[static_cast<std::size_t>(i)];
    return c;
  }

  int nonempty_columns() const {
    auto c = column_counts();
    return static_cast<int>(std::count_if(c.begin(), c.end(), [](int v) { return v > 0; }));
  }

  int max_column() const {
    auto c = column_counts();
    return *std::max_element(c.begin(), c.end());
  }

  int min_column() const {
    int best = n + 1;
    for (int v : column_counts())
      if (v > 0) best = std::min(best, v);
    return best;
  }

  /// No two chosen cells in adjacent columns.
  bool columns_separated() const {
    auto c = column_counts();
    for (int i = 0; i + 1 < m; ++i)
      if (c[static_cast<std::size_t>(i)] > 0 && c[static_cast<std::size_t>(i + 1)] > 0) return false;
    return true;
  }

  IfsSpec to_ifs() const {
    validate();
    IfsSpec s;
    s.dim = 2;
    for (auto [i, j] : cells)
      s.maps.push_back(AffineMap::diagonal({1.0 / m, 1.0 / n}, {static_cast<double>(i) / m, static_cast<double>(j) / n}));
    return s;
  }
};

/// A cylinder word: letters index the maps (or carpet cells). Empty is the identity.
using CylinderWord = std::vector<std::size_t>;

struct WeightedMeasureSpec {
  std::variant<IfsSpec, CarpetSpec> base;
  std::vector<double> weights;

  bool is_carpet() const noexcept { return std::holds_alternative<CarpetSpec>(base); }
  const CarpetSpec& carpet() const { return std::get<CarpetSpec>(base); }

  std::size_t letters() const {
    return is_carpet() ? carpet().size() : std::get<IfsSpec>(base).maps.size();
  }

  IfsSpec ifs() const { return is_carpet() ? carpet().to_ifs() : std::get<IfsSpec>(base); }

  void validate() const {
    if (is_carpet()) carpet().validate();
    else std::get<IfsSpec>(base).validate();
    require(weights.size() == letters(), "weights/maps length mismatch");
    double sum = 0.0;
    for (double w : weights) {
      require(w > 0.0 && std::isfinite(w), "weights must be positive");
      sum += w;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "weights must sum to 1");
  }

  /// Column masses P(i) of a carpet measure, indexed by column.
  std::vector<double> column_masses() const {
    const auto& c = carpet();
    std::vector<double> out(static_cast<std::size_t>(c.m), 0.0);
    for (std::size_t d = 0; d < c.size(); ++d) out[static_cast<std::size_t>(c.cells[d].first)] += weights[d];
    return out;
  }
};

namespace detail {

/// Smallest axis box B (found by iteration) with bbox(U S_i(B)) inside B.
inline std::pair<std::vector<double>, std::vector<double>> invariant_box(const IfsSpec& ifs) {
  const std::size_t d = ifs.dim;
  const auto x0 = ifs.maps.front().fixed_point();
  const double c = ifs.max_ratio();
  double spread = 0.0;
  std::vector<double> y(d);
  for (const auto& f : ifs.maps) {
    f.apply(x0, y);
    double e = 0.0;
    for (std::size_t j = 0; j < d; ++j) e += (y[j] - x0[j]) * (y[j] - x0[j]);
    spread = std::max(spread, std::sqrt(e));
  }
  const double radius = spread / (1.0 - c);
  std::vector<double> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = x0[j] - radius;
    hi[j] = x0[j] + radius;
  }
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> nlo(d, INFINITY), nhi(d, -INFINITY);
    for (const auto& f : ifs.maps) {
      for (std::size_t i = 0; i < d; ++i) {
        double a = f.translation[i], b = f.translation[i];
        for (std::size_t j = 0; j < d; ++j) {
          const double v = f.linear[i * d + j];
          a += std::min(v * lo[j], v * hi[j]);
          b += std::max(v * lo[j], v * hi[j]);
        }
        nlo[i] = std::min(nlo[i], a);
        nhi[i] = std::max(nhi[i], b);
      }
    }
    double change = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      nlo[j] = std::max(nlo[j], lo[j]);
      nhi[j] = std::min(nhi[j], hi[j]);
      change = std::max({change, nlo[j] - lo[j], hi[j] - nhi[j]});
    }
    lo = std::move(nlo);
    hi = std::move(nhi);
    if (change <= 1e-15) break;
  }
  return {lo, hi};
}

inline double box_diameter(const std::vector<double>& lo, const std::vector<double>& hi) {
  double s = 0.0;
  for (std::size_t j = 0; j < lo.size(); ++j) s += (hi[j] - lo[j]) * (hi[j] - lo[j]);
  return std::sqrt(s);
}

inline std::size_t checked_word_count(std::size_t letters, int depth, std::size_t cap) {
  require(depth >= 0, "depth must be >= 0");
  std::size_t count = 1;
  for (int k = 0; k < depth; ++k) {
    if (count > cap / letters) {
      const int suggested = static_cast<int>(std::floor(std::log(static_cast<double>(cap)) /
                                                        std::log(static_cast<double>(letters))));
      fail(ErrorKind::cap_exceeded, std::to_string(letters) + "^" + std::to_string(depth) +
                                        " points exceed the cap of " + std::to_string(cap) +
                                        "; try depth " + std::to_string(letters > 1 ? suggested : depth));
    }
    count *= letters;
  }
  return count;
}

/// Images of `start` under all words of length `depth`, words in lexicographic order.
inline std::vector<double> iterate_images(const IfsSpec& ifs, std::vector<double> start, int depth) {
  const std::size_t d = ifs.dim;
  std::vector<double> cur = std::move(start);
  for (int k = 0; k < depth; ++k) {
    const std::size_t n = cur.size() / d;
    std::vector<double> next(cur.size() * ifs.maps.size());
    std::size_t out = 0;
    for (const auto& f : ifs.maps) {
      for (std::size_t p = 0; p < n; ++p) {
        f.apply(std::span<const double>(cur.data() + p * d, d), std::span<double>(next.data() + out, d));
        out += d;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

enum class SeedMode {
  /// Every word uses the fixed point of the first map.
  first_fixed_point,
  /// Word i_1..i_k is S_{i_1..i_{k-1}} applied to the fixed point of S_{i_k}.
  own_fixed_point,
};

struct AttractorOptions {
  SeedMode seed_mode = SeedMode::first_fixed_point;
  std::optional<std::vector<double>> seed;
  std::size_t cap = default_point_cap();
};

/// One point per depth-k word: S_w(seed). Coinciding images are merged.
inline PointSet attractor_by_depth(const IfsSpec& ifs, int depth, const AttractorOptions& opt = {}) {
  ifs.validate();
  require(depth >= 0, "depth must be >= 0");
  detail::checked_word_count(ifs.maps.size(), depth, opt.cap);
  const std::size_t d = ifs.dim;
  auto [lo, hi] = detail::invariant_box(ifs);
  double spread = detail::box_diameter(lo, hi);
  std::vector<double> pts;
  if (opt.seed) {
    require(opt.seed->size() == d, "seed dimension mismatch");
    double gap = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double x = (*opt.seed)[j];
      const double e = std::max({lo[j] - x, x - hi[j], 0.0});
      gap += e * e;
    }
    spread += std::sqrt(gap);
    pts = detail::iterate_images(ifs, *opt.seed, depth);
  } else if (opt.seed_mode == SeedMode::own_fixed_point && depth >= 1) {
    std::vector<double> fixed;
    for (const auto& f : ifs.maps) {
      auto x = f.fixed_point();
      fixed.insert(fixed.end(), x.begin(), x.end());
    }
    pts = detail::iterate_images(ifs, std::move(fixed), depth - 1);
  } else {
    pts = detail::iterate_images(ifs, ifs.maps.front().fixed_point(), depth);
  }
  const double resolution = std::pow(ifs.max_ratio(), depth) * spread;
  return PointSet::deduplicated(d, std::move(pts), resolution, "ifs depth " + std::to_string(depth));
}

/// Carpet points S_w(0,0) (lower-left corners of the depth-k cylinders).
inline PointSet carpet_attractor(const CarpetSpec& spec, int depth, std::size_t cap = default_point_cap()) {
  spec.validate();
  require(depth >= 0, "depth must be >= 0");
  detail::checked_word_count(spec.size(), depth, cap);
  auto pts = detail::iterate_images(spec.to_ifs(), {0.0, 0.0}, depth);
  return PointSet::deduplicated(2, std::move(pts), std::pow(static_cast<double>(spec.m), -depth),
                                "carpet m=" + std::to_string(spec.m) + " n=" + std::to_string(spec.n) +
                                    " depth " + std::to_string(depth));
}

/// Random-iteration sampling of the invariant measure. The first 100 iterates,
/// started from the first map's fixed point, are discarded.
inline PointSet chaos_game(const WeightedMeasureSpec& measure, std::size_t n_points, std::uint64_t seed) {
  measure.validate();
  const IfsSpec ifs = measure.ifs();
  constexpr std::size_t kBurnIn = 100;
  if (n_points == 0) fail(ErrorKind::empty_set, "empty output");
  std::vector<double> cumulative;
  double acc = 0.0;
  for (double w : measure.weights) cumulative.push_back(acc += w);
  std::mt19937_64 rng(seed);
  const std::size_t d = ifs.dim;
  std::vector<double> x = ifs.maps.front().fixed_point(), y(d);
  std::vector<double> pts;
  pts.reserve(n_points * d);
  for (std::size_t it = 0; it < kBurnIn + n_points; ++it) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto pos = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(pos), ifs.maps.size() - 1);
    ifs.maps[idx].apply(x, y);
    std::swap(x, y);
    if (it >= kBurnIn) pts.insert(pts.end(), x.begin(), x.end());
  }
  auto [lo, hi] = detail::invariant_box(ifs);
  const double c = ifs.max_ratio();
  const double depth = std::floor(std::log(static_cast<double>(n_points)) / std::log(1.0 / c));
  const double resolution = std::pow(c, depth) * detail::box_diameter(lo, hi);
  return PointSet::deduplicated(d, std::move(pts), resolution, "chaos game seed " + std::to_string(seed));
}

/// Product of the weights along the word.
inline double cylinder_mass(const WeightedMeasureSpec& measure, const CylinderWord& word) {
  double mass = 1.0;
  for (auto letter : word) {
    if (letter >= measure.weights.size()) fail(ErrorKind::invalid_argument, "invalid letter " + std::to_string(letter));
    mass *= measure.weights[letter];
  }
  return mass;
}

/// Number of m-adic levels l with m^-l <= r < m^(-l+1).
inline int approx_level(double r, int base) {
  require(r > 0.0 && r <= 1.0, "scale must lie in (0,1]");
  int level = 0;
  double w = 1.0;
  while (w > r * (1.0 + 1e-12)) {
    w /= base;
    ++level;
  }
  return level;
}

/// Carpet approximate square: the cells of a word's first l1 letters, with rows
/// fixed only for the first l2.
struct ApproxSquare {
  int l1 = 0;
  int l2 = 0;
  double r = 1.0;
  CylinderWord prefix;
  double x = 0.0, y = 0.0, width = 1.0, height = 1.0;
};

inline ApproxSquare approx_square(const CarpetSpec& spec, const CylinderWord& word, double r) {
  spec.validate();
  ApproxSquare q;
  q.r = r;
  q.l1 = approx_level(r, spec.m);
  q.l2 = approx_level(r, spec.n);
  if (static_cast<int>(word.size()) < q.l1) fail(ErrorKind::invalid_argument, "word too short");
  q.prefix.assign(word.begin(), word.begin() + q.l1);
  double sx = 1.0, sy = 1.0;
  for (int l = 0; l < q.l1; ++l) {
    const auto letter = q.prefix[static_cast<std::size_t>(l)];
    require(letter < spec.size(), "invalid letter " + std::to_string(letter));
    auto [i, j] = spec.cells[letter];
    sx /= spec.m;
    q.x += i * sx;
    if (l < q.l2) {
      sy /= spec.n;
      q.y += j * sy;
    }
  }
  q.width = sx;
  q.height = sy;
  return q;
}

/// Mass of an approximate square: cell weights down to l2, then column masses down to l1.
inline double approx_square_mass(const WeightedMeasureSpec& measure, const ApproxSquare& q) {
  require(measure.is_carpet(), "approximate squares need a carpet measure");
  const auto columns = measure.column_masses();
  const auto& carpet = measure.carpet();
  double mass = 1.0;
  for (int l = 0; l < q.l1; ++l) {
    const auto letter = q.prefix[static_cast<std::size_t>(l)];
    if (letter >= measure.weights.size()) fail(ErrorKind::invalid_argument, "invalid letter " + std::to_string(letter));
    mass *= l < q.l2 ? measure.weights[letter]
                     : columns[static_cast<std::size_t>(carpet.cells[letter].first)];
  }
  return mass;
}

/// mu(Q(a, r)) / mu(Q(b, r)).
inline double approx_square_ratio(const WeightedMeasureSpec& measure, const CylinderWord& a,
                                  const CylinderWord& b, double r) {
  const auto& c = measure.carpet();
  return approx_square_mass(measure, approx_square(c, a, r)) / approx_square_mass(measure, approx_square(c, b, r));
}

struct SeparationReport {
  bool separated = false;
  /// First-level maps whose cylinder boxes meet (closed boxes, touching counts).
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  int depth = 0;
};

namespace detail {

struct Cylinder {
  std::vector<double> linear;
  std::vector<double> shift;
};

inline void cylinder_boxes(const IfsSpec& ifs, const std::vector<double>& lo, const std::vector<double>& hi,
                           const Cylinder& cyl, int remaining, std::vector<std::vector<double>>& out) {
  const std::size_t d = ifs.dim;
  if (remaining == 0) {
    std::vector<double> box(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      double a = cyl.shift[i], b = cyl.shift[i];
      for (std::size_t j = 0; j < d; ++j) {
        const double v = cyl.linear[i * d + j];
        a += std::min(v * lo[j], v * hi[j]);
        b += std::max(v * lo[j], v * hi[j]);
      }
      box[i] = a;
      box[d + i] = b;
    }
    out.push_back(std::move(box));
    return;
  }
  for (const auto& f : ifs.maps) {
    Cylinder next{std::vector<double>(d * d, 0.0), cyl.shift};
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < d; ++l) s += cyl.linear[i * d + l] * f.linear[l * d + j];
        next.linear[i * d + j] = s;
      }
      for (std::size_t l = 0; l < d; ++l) next.shift[i] += cyl.linear[i * d + l] * f.translation[l];
    }
    cylinder_boxes(ifs, lo, hi, next, remaining - 1, out);
  }
}

}  // namespace detail

/// Semi-decision for the strong separation condition: compares bounding boxes
/// of the depth-limited cylinders under each first-level map.
inline SeparationReport check_strong_separation(const IfsSpec& ifs, int depth) {
  ifs.validate();
  require(depth >= 1, "depth must be >= 1");
  detail::checked_word_count(ifs.maps.size(), depth, default_point_cap());
  const std::size_t d = ifs.dim;
  auto [lo, hi] = detail::invariant_box(ifs);
  std::vector<std::vector<std::vector<double>>> boxes(ifs.maps.size());
  for (std::size_t i = 0; i < ifs.maps.size(); ++i) {
    detail::Cylinder first{ifs.maps[i].linear, ifs.maps[i].translation};
    detail::cylinder_boxes(ifs, lo, hi, first, depth - 1, boxes[i]);
  }
  auto meet = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t j = 0; j < d; ++j)
      if (a[d + j] < b[j] || b[d + j] < a[j]) return false;
    return true;
  };
  SeparationReport rep;
  rep.depth = depth;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      for (const auto& a : boxes[i])
        for (const auto& b : boxes[j])
          if (meet(a, b)) {
            rep.witness = std::pair{i, j};
            return rep;
          }
  rep.separated = true;
  return rep;
}

/// Mass of the closed sup-norm ball B(center, radius) under the invariant measure,
/// by descending through cylinders. Cylinders still straddling the boundary at
/// `max_depth` are decided by their image of the first map's fixed point.
inline double ball_mass(const WeightedMeasureSpec& measure, std::span<const double> center, double radius,
                        int max_depth) {
  const IfsSpec ifs = measure.ifs();
  const std::size_t d = ifs.dim;
  require(center.size() == d, "center dimension mismatch");
  std::vector<double> lo, hi;
  if (measure.is_carpet()) {
    lo.assign(2, 0.0);
    hi.assign(2, 1.0);
  } else {
    std::tie(lo, hi) = detail::invariant_box(ifs);
  }
  const auto seed = ifs.maps.front().fixed_point();
  double total = 0.0;
  std::vector<double> rep(d);
  auto recurse = [&](auto&& self, const detail::Cylinder& cyl, double mass, int level) -> void {
    bool inside = true;
    for (std::size_t i = 0; i < d; ++i) {
      double a = cyl.shift[i], b = cyl.shift[i];
      for (std::size_t j = 0; j < d; ++j) {
        const double v = cyl.linear[i * d + j];
        a += std::min(v * lo[j], v * hi[j]);
        b += std::max(v * lo[j], v * hi[j]);
      }
      if (b < center[i] - radius || a > center[i] + radius) return;
      if (a < center[i] - radius || b > center[i] + radius) inside = false;
    }
    if (inside) {
      total += mass;
      return;
    }
    if (level == max_depth) {
      for (std::size_t i = 0; i < d; ++i) {
        double s = cyl.shift[i];
        for (std::size_t j = 0; j < d; ++j) s += cyl.linear[i * d + j] * seed[j];
        rep[i] = s;
      }
      if (sup_distance(rep, center) <= radius) total += mass;
      return;
    }
    for (std::size_t k = 0; k < ifs.maps.size(); ++k) {
      const auto& f = ifs.maps[k];
      detail::Cylinder next{std::vector<double>(d * d, 0.0), cyl.shift};
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          double s = 0.0;
          for (std::size_t l = 0; l < d; ++l) s += cyl.linear[i * d + l] * f.linear[l * d + j];
          next.linear[i * d + j] = s;
        }
        for (std::size_t l = 0; l < d; ++l) next.shift[i] += cyl.linear[i * d + l] * f.translation[l];
      }
      self(self, next, mass * measure.weights[k], level + 1);
    }
  };
  detail::Cylinder root{std::vector<double>(d * d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < d; ++i) root.linear[i * d + i] = 1.0;
  recurse(recurse, root, 1.0, 0);
  return total;
}

/// Weights p_d = N_i^(rho - 1) / m^(dim_H) that maximise the Hausdorff dimension
/// of a carpet measure (N_i is the size of the cell's column, rho = log m / log n).
inline std::vector<double> mcmullen_weights(const CarpetSpec& spec) {
  spec.validate();
  const double rho = std::log(spec.m) / std::log(spec.n);
  const auto cols = spec.column_counts();
  double z = 0.0;
  for (int c : cols)
    if (c > 0) z += std::pow(c, rho);
  std::vector<double> w;
  for (auto [i, j] : spec.cells) w.push_back(std::pow(cols[static_cast<std::size_t>(i)], rho - 1.0) / z);
  return w;
}

}  // namespace akit

#endif  // ASSOUAD_KIT_IFS_HPP
