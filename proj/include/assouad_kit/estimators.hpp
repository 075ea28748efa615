#ifndef ASSOUAD_KIT_ESTIMATORS_HPP
#define ASSOUAD_KIT_ESTIMATORS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "assouad_kit/covering.hpp"
#include "assouad_kit/error.hpp"
#include "assouad_kit/ifs.hpp"
#include "assouad_kit/point_set.hpp"

namespace akit {

/// One (x, y) pair of a log-log fit. For set estimators k is the dyadic exponent;
/// for measure estimators it is the cylinder level.
struct ScaleSample {
  int k = 0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const ScaleSample&, const ScaleSample&) = default;
};

struct FitReport {
  double estimate = 0.0;
  int k_min = 0;
  int k_max = 0;
  /// RMS residual of the log-log fit.
  double residual = 0.0;
  std::size_t n_scales = 0;
  std::string method;
  std::vector<ScaleSample> samples;
  std::vector<std::string> diagnostics;

  friend bool operator==(const FitReport&, const FitReport&) = default;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  require(xs.size() == ys.size() && xs.size() >= 2, "need at least two samples to fit");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  require(sxx > 0.0, "fit abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.slope * xs[i] + f.intercept);
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

/// Which points serve as ball centres.
///
/// Sets larger than max_centers are subsampled by a stable hash of the
/// coordinates; the per-axis extreme points are always added. Subsampling
/// biases Assouad-type estimates down and lower-type estimates up.
struct CenterPolicy {
  std::size_t max_centers = 4096;
  std::uint64_t seed = 0;
  bool include_extremes = true;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t point_hash(std::span<const double> p, std::uint64_t seed) {
  std::uint64_t h = splitmix(seed);
  for (double c : p) h = splitmix(h ^ std::bit_cast<std::uint64_t>(c + 0.0));
  return h;
}

inline void finish_fit(FitReport& rep, const std::vector<double>& xs, const std::vector<double>& ys) {
  rep.n_scales = xs.size();
  if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); }) && ys.front() == 0.0) {
    rep.estimate = 0.0;
    rep.residual = 0.0;
    rep.diagnostics.push_back("flat: count is 1 at every scale");
    return;
  }
  const auto fit = least_squares(xs, ys);
  rep.estimate = fit.slope;
  rep.residual = fit.rms;
}

/// Exponents in [k_min, k_max] that pass the resolution gate.
inline std::vector<int> valid_exponents(const PointSet& set, int k_min, int k_max) {
  require(k_min <= k_max, "k_min must not exceed k_max");
  std::vector<int> out;
  for (int k = k_min; k <= k_max; ++k)
    if (DyadicScale{k}.value() >= kResolutionGate * set.resolution()) out.push_back(k);
  return out;
}

inline void require_scales(std::size_t n, const std::string& what) {
  if (n < 4)
    fail(ErrorKind::too_few_scales,
         "too few valid scales for " + what + " (" + std::to_string(n) + " < 4 after the resolution gate)");
}

}  // namespace detail

namespace detail {

/// Occupied half-open 2^-k cells, without the resolution gate.
inline std::size_t mesh_cells_at(const PointSet& set, int k) {
  std::vector<std::int64_t> keys(set.coords().size());
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = cell_index(set.coords()[i], k);
  return count_distinct_rows(keys, set.dim());
}

/// One point per occupied 2^-k cell, the one with the smallest hash.
inline std::vector<std::size_t> cell_representatives(const PointSet& set, int k, const std::vector<std::uint64_t>& hash) {
  const std::size_t n = set.size(), d = set.dim();
  std::vector<std::int64_t> keys(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) keys[i * d + j] = cell_index(set.point(i)[j], k);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return std::span<const std::int64_t>(keys.data() + i * d, d); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ra = row(a), rb = row(b);
    if (!std::ranges::equal(ra, rb)) return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    return std::pair(hash[a], a) < std::pair(hash[b], b);
  });
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < n; ++s)
    if (s == 0 || !std::ranges::equal(row(order[s]), row(order[s - 1]))) out.push_back(order[s]);
  return out;
}

}  // namespace detail

/// Indices of the centres chosen by the policy, ascending.
///
/// Takes the finest dyadic mesh with at most max_centers occupied cells and keeps
/// the point of smallest hash in each cell, so sparse parts of the set are not
/// crowded out by dense ones.
inline std::vector<std::size_t> select_centers(const PointSet& set, const CenterPolicy& policy) {
  if (set.empty()) fail(ErrorKind::empty_set, "empty set");
  const std::size_t n = set.size();
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), 0);
  if (n <= policy.max_centers) return out;
  require(policy.max_centers >= 1, "max_centers must be positive");
  std::vector<std::uint64_t> hash(n);
  for (std::size_t i = 0; i < n; ++i) hash[i] = detail::point_hash(set.point(i), policy.seed);
  int lo = -60, hi = 40;
  // cells(k) is nondecreasing in k; find the largest k with cells(k) <= max_centers.
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (detail::mesh_cells_at(set, mid) <= policy.max_centers) lo = mid;
    else hi = mid;
  }
  out = detail::cell_representatives(set, lo, hash);
  if (policy.include_extremes) {
    for (std::size_t j = 0; j < set.dim(); ++j) {
      std::size_t a = 0, b = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if (set.point(i)[j] < set.point(a)[j]) a = i;
        if (set.point(i)[j] > set.point(b)[j]) b = i;
      }
      out.push_back(a);
      out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Slope of log N_r against log(1/r) over the gated dyadic scales in [k_min, k_max].
inline FitReport fit_box_dimension(const PointSet& set, int k_min, int k_max) {
  if (set.empty()) fail(ErrorKind::empty_set, "empty set");
  const auto ks = detail::valid_exponents(set, k_min, k_max);
  detail::require_scales(ks.size(), "box dimension");
  FitReport rep;
  rep.method = "box/mesh-ols";
  rep.k_min = ks.front();
  rep.k_max = ks.back();
  std::vector<double> xs, ys;
  for (int k : ks) {
    const double y = std::log(static_cast<double>(mesh_count(set, {k}).count));
    xs.push_back(k * std::numbers::ln2);
    ys.push_back(y);
    rep.samples.push_back({k, xs.back(), y});
  }
  detail::finish_fit(rep, xs, ys);
  return rep;
}

namespace detail {

inline FitReport local_spectrum(const PointSet& set, double theta, int k_min, int k_max,
                                const CenterPolicy& policy, bool upper) {
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  if (set.empty()) fail(ErrorKind::empty_set, "empty set");
  auto ks = valid_exponents(set, k_min, k_max);
  ks.erase(std::remove_if(ks.begin(), ks.end(), [](int k) { return k < 1; }), ks.end());
  require_scales(ks.size(), upper ? "Assouad spectrum" : "lower spectrum");
  const auto centers = select_centers(set, policy);
  if (centers.empty()) fail(ErrorKind::center_off_set, "no valid centers");
  FitReport rep;
  rep.method = upper ? "assouad-spectrum/max-local-cover" : "lower-spectrum/min-local-cover";
  rep.k_min = ks.front();
  rep.k_max = ks.back();
  std::vector<double> xs, ys;
  for (int k : ks) {
    const CoverIndex index(set, {k});
    const double R = std::pow(DyadicScale{k}.value(), theta);
    std::size_t best = upper ? 0 : std::numeric_limits<std::size_t>::max();
    for (auto c : centers) {
      const std::size_t n = index.count(set.point(c), R);
      best = upper ? std::max(best, n) : std::min(best, n);
    }
    xs.push_back((1.0 - theta) * k * std::numbers::ln2);
    ys.push_back(std::log(static_cast<double>(best)));
    rep.samples.push_back({k, xs.back(), ys.back()});
  }
  rep.diagnostics.push_back("centers: " + std::to_string(centers.size()) + " of " + std::to_string(set.size()));
  finish_fit(rep, xs, ys);
  return rep;
}

}  // namespace detail

/// Slope of log max_x N_r(B(x, r^theta)) against log(r^theta / r).
inline FitReport estimate_assouad_spectrum(const PointSet& set, double theta, int k_min, int k_max,
                                           const CenterPolicy& policy = {}) {
  return detail::local_spectrum(set, theta, k_min, k_max, policy, true);
}

/// As estimate_assouad_spectrum with the minimum over centres.
inline FitReport estimate_lower_spectrum(const PointSet& set, double theta, int k_min, int k_max,
                                         const CenterPolicy& policy = {}) {
  return detail::local_spectrum(set, theta, k_min, k_max, policy, false);
}

/// Assouad dimension from two-scale local counts.
///
/// For each coarse scale R = 2^-j, M(g) is the largest count N_r(B(x,R)) with
/// r = 2^-(j+g) and 2^g >= ratio_floor; the estimate is the largest OLS slope of
/// log M(g) against g log 2, which discards the covering constant. The raw
/// maximum of log N / log(R/r) is kept in the diagnostics. Finite data cannot
/// certify the supremum, so the estimate is biased low in the limit.
inline FitReport estimate_assouad_dimension(const PointSet& set, double ratio_floor, int k_min, int k_max,
                                            const CenterPolicy& policy = {}) {
  require(ratio_floor >= 4.0, "ratio_floor must be >= 4");
  if (set.empty()) fail(ErrorKind::empty_set, "empty set");
  const auto ks = detail::valid_exponents(set, k_min, k_max);
  const int gap = static_cast<int>(std::ceil(std::log2(ratio_floor) - 1e-12));
  const auto centers = select_centers(set, policy);
  std::vector<std::vector<ScaleSample>> by_j(static_cast<std::size_t>(std::max(k_max - k_min + 1, 0)));
  double raw = -1.0;
  int raw_j = 0, raw_k = 0;
  for (int k : ks) {
    if (k - gap < k_min) continue;
    const CoverIndex index(set, {k});
    for (int j = k_min; j <= k - gap; ++j) {
      std::size_t top = 0;
      for (auto c : centers) top = std::max(top, index.count(set.point(c), DyadicScale{j}.value()));
      const double x = (k - j) * std::numbers::ln2, y = std::log(static_cast<double>(top));
      by_j[static_cast<std::size_t>(j - k_min)].push_back({k, x, y});
      if (y / x > raw) {
        raw = y / x;
        raw_j = j;
        raw_k = k;
      }
    }
  }
  FitReport rep;
  rep.method = "assouad/max-local-slope";
  bool found = false;
  int best_j = 0;
  for (std::size_t i = 0; i < by_j.size(); ++i) {
    const auto& v = by_j[i];
    if (v.size() < 4) continue;
    std::vector<double> xs, ys;
    for (const auto& smp : v) {
      xs.push_back(smp.x);
      ys.push_back(smp.y);
    }
    FitReport trial;
    detail::finish_fit(trial, xs, ys);
    if (!found || trial.estimate > rep.estimate) {
      found = true;
      best_j = k_min + static_cast<int>(i);
      rep.estimate = trial.estimate;
      rep.residual = trial.residual;
      rep.n_scales = trial.n_scales;
      rep.samples = v;
    }
  }
  if (!found) fail(ErrorKind::too_few_scales, "no coarse scale has 4 valid fine scales above the ratio floor");
  rep.k_min = rep.samples.front().k;
  rep.k_max = rep.samples.back().k;
  rep.diagnostics.push_back("maximising coarse scale: R = 2^-" + std::to_string(best_j));
  rep.diagnostics.push_back("raw max log N / log(R/r) = " + std::to_string(raw) + " at R = 2^-" +
                            std::to_string(raw_j) + ", r = 2^-" + std::to_string(raw_k));
  rep.diagnostics.push_back("centers: " + std::to_string(centers.size()));
  rep.diagnostics.push_back("lower-bound biased: finite data cannot certify the supremum");
  return rep;
}

// Measures

namespace detail {

/// Words of length `depth`: every word a^i b c^(depth-i-1) (for up to 8 letters),
/// then pseudo-random ones from the policy seed.
inline std::vector<CylinderWord> sample_words(std::size_t letters, int depth, const CenterPolicy& policy) {
  std::vector<CylinderWord> out;
  const auto len = static_cast<std::size_t>(depth);
  if (letters <= 8) {
    for (std::size_t a = 0; a < letters; ++a)
      for (std::size_t b = 0; b < letters; ++b)
        for (std::size_t c = 0; c < letters; ++c)
          for (std::size_t i = 0; i < len; ++i) {
            if ((b == a || b == c) && i > 0) continue;
            CylinderWord w(len, c);
            std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i), a);
            w[i] = b;
            out.push_back(std::move(w));
          }
  } else {
    for (std::size_t a = 0; a < letters; ++a) out.emplace_back(len, a);
  }
  std::mt19937_64 rng(policy.seed);
  for (std::size_t s = 0; s < policy.max_centers; ++s) {
    CylinderWord w(static_cast<std::size_t>(depth));
    for (auto& a : w) a = static_cast<std::size_t>(rng() % letters);
    out.push_back(std::move(w));
  }
  return out;
}

/// Per-position factor of an approximate-square mass at levels (l1, l2).
inline double square_factor(const WeightedMeasureSpec& mu, const std::vector<double>& columns, int t, int l1,
                            int l2, std::size_t letter) {
  if (t < l2) return mu.weights[letter];
  if (t < l1) return columns[static_cast<std::size_t>(mu.carpet().cells[letter].first)];
  return 1.0;
}

/// Word maximising (or minimising) mu(Q(w, R)) / mu(Q(w, r)); the ratio factorises by position.
inline CylinderWord extremal_word(const WeightedMeasureSpec& mu, double R, double r, int depth, bool upper) {
  const auto& c = mu.carpet();
  const auto columns = mu.column_masses();
  const int L1 = approx_level(R, c.m), L2 = approx_level(R, c.n);
  const int l1 = approx_level(r, c.m), l2 = approx_level(r, c.n);
  CylinderWord w(static_cast<std::size_t>(depth), 0);
  for (int t = 0; t < depth; ++t) {
    double best = 0.0;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const double f = square_factor(mu, columns, t, L1, L2, a) / square_factor(mu, columns, t, l1, l2, a);
      if (a == 0 || (upper ? f > best : f < best)) {
        best = f;
        w[static_cast<std::size_t>(t)] = a;
      }
    }
  }
  return w;
}

/// Mass of the shortest prefix of `word` whose ratio product is <= s, or nullopt if the word is too short.
inline std::optional<double> stopping_cylinder_mass(const WeightedMeasureSpec& mu, const std::vector<double>& ratios,
                                                    const CylinderWord& word, double s) {
  double size = 1.0, mass = 1.0;
  for (auto a : word) {
    if (size <= s) return mass;
    size *= ratios[a];
    mass *= mu.weights[a];
  }
  if (size <= s) return mass;
  return std::nullopt;
}

}  // namespace detail

/// Slope of log of the extreme of mu(Q(x, r^theta)) / mu(Q(x, r)) against log(r^theta / r).
///
/// Carpets use approximate squares; other bases use stopping cylinders. Scales are
/// r = c^l, c the largest contraction ratio, for levels l <= depth.
inline FitReport estimate_measure_spectrum(const WeightedMeasureSpec& measure, double theta, int depth,
                                           const CenterPolicy& policy = {}, bool upper = true) {
  measure.validate();
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  require(depth >= 1, "depth must be positive");
  const bool carpet = measure.is_carpet();
  const IfsSpec ifs = measure.ifs();
  std::vector<double> ratios = carpet ? std::vector<double>(measure.letters(), 1.0 / measure.carpet().m) : ifs.ratios();
  const double c = carpet ? 1.0 / measure.carpet().m : ifs.max_ratio();
  FitReport rep;
  rep.method = std::string(upper ? "measure-assouad" : "measure-lower") +
               (carpet ? "/approx-square" : "/stopping-cylinder");
  std::vector<int> levels;
  for (int l = 1; l <= depth; ++l)
    if ((1.0 - theta) * l * std::log(1.0 / c) >= std::numbers::ln2) levels.push_back(l);
  if (levels.size() < 4)
    fail(ErrorKind::too_few_scales, "depth insufficient for the scale pair: need depth >= " +
                                        std::to_string(static_cast<int>(std::ceil(
                                            std::numbers::ln2 / ((1.0 - theta) * std::log(1.0 / c)))) + 3));
  const auto base_words = detail::sample_words(measure.letters(), depth, policy);
  std::vector<double> xs, ys;
  for (int l : levels) {
    const double r = std::pow(c, l) * (1.0 + 1e-12);
    const double R = std::pow(std::pow(c, l), theta);
    auto words = base_words;
    if (carpet) words.push_back(detail::extremal_word(measure, R, r, depth, upper));
    double best = upper ? 0.0 : std::numeric_limits<double>::infinity();
    for (const auto& w : words) {
      double ratio;
      if (carpet) {
        const auto& cs = measure.carpet();
        ratio = approx_square_mass(measure, approx_square(cs, w, R)) / approx_square_mass(measure, approx_square(cs, w, r));
      } else {
        auto big = detail::stopping_cylinder_mass(measure, ratios, w, R);
        auto small = detail::stopping_cylinder_mass(measure, ratios, w, r);
        if (!big || !small) fail(ErrorKind::invalid_argument, "depth insufficient for the scale pair");
        ratio = *big / *small;
      }
      best = upper ? std::max(best, ratio) : std::min(best, ratio);
    }
    xs.push_back(std::log(R / std::pow(c, l)));
    ys.push_back(std::log(best));
    rep.samples.push_back({l, xs.back(), ys.back()});
  }
  rep.k_min = levels.front();
  rep.k_max = levels.back();
  rep.diagnostics.push_back("words: " + std::to_string(base_words.size()) + (carpet ? " plus extremal word" : ""));
  detail::finish_fit(rep, xs, ys);
  return rep;
}

struct DoublingEntry {
  double r = 0.0;
  /// max over centres of mass(enlarged ball) / mass(ball).
  double max_ratio = 1.0;
  CylinderWord center;
  /// Carpets: grid offset of the heaviest neighbouring square.
  std::vector<long long> offset;
};

namespace detail {

/// Mass of the carpet approximate square at grid position (col, row) for levels (l1, l2).
inline double grid_square_mass(const WeightedMeasureSpec& mu, const std::vector<double>& columns, int l1, int l2,
                               long long col, long long row) {
  const auto& c = mu.carpet();
  double mass = 1.0;
  for (int t = l1 - 1; t >= 0; --t) {
    const long long i = col % c.m;
    col /= c.m;
    if (t < l2) {
      const long long j = row % c.n;
      row /= c.n;
      std::size_t letter = c.size();
      for (std::size_t a = 0; a < c.size(); ++a)
        if (c.cells[a].first == i && c.cells[a].second == j) letter = a;
      if (letter == c.size()) return 0.0;
      mass *= mu.weights[letter];
    } else {
      mass *= columns[static_cast<std::size_t>(i)];
    }
  }
  return mass;
}

}  // namespace detail

/// Doubling profile: for each scale r, the largest mass ratio between a ball of
/// radius r and its enlargement, over sampled centres.
///
/// Carpets compare an approximate square with the squares within `reach` grid
/// steps (reach 0 compares a square with itself). Other measures compare
/// ball_mass at radii (1 + reach) r and r around cylinder points.
inline std::vector<DoublingEntry> doubling_profile(const WeightedMeasureSpec& measure, const std::vector<double>& scales,
                                                   const CenterPolicy& policy = {}, int reach = 1) {
  measure.validate();
  require(reach >= 0, "reach must be >= 0");
  std::vector<DoublingEntry> out;
  const IfsSpec ifs = measure.ifs();
  for (double r : scales) {
    require(r > 0.0 && r <= 1.0, "scale must lie in (0,1]");
    DoublingEntry e;
    e.r = r;
    if (measure.is_carpet()) {
      const auto& c = measure.carpet();
      const auto columns = measure.column_masses();
      const int l1 = approx_level(r, c.m), l2 = approx_level(r, c.n);
      auto words = detail::sample_words(c.size(), std::max(l1, 1), policy);
      const long long cols = static_cast<long long>(std::llround(std::pow(c.m, l1)));
      const long long rows = static_cast<long long>(std::llround(std::pow(c.n, l2)));
      for (const auto& w : words) {
        const auto q = approx_square(c, w, r);
        const long long col = std::llround(q.x / q.width), row = std::llround(q.y / q.height);
        const double own = approx_square_mass(measure, q);
        for (long long dx = -reach; dx <= reach; ++dx)
          for (long long dy = -reach; dy <= reach; ++dy) {
            if (col + dx < 0 || col + dx >= cols || row + dy < 0 || row + dy >= rows) continue;
            const double ratio = detail::grid_square_mass(measure, columns, l1, l2, col + dx, row + dy) / own;
            if (ratio > e.max_ratio) {
              e.max_ratio = ratio;
              e.center = w;
              e.offset = {dx, dy};
            }
          }
      }
    } else {
      const auto ratios = ifs.ratios();
      const double cmax = ifs.max_ratio();
      auto [lo, hi] = detail::invariant_box(ifs);
      const double diam = detail::box_diameter(lo, hi);
      const int depth = static_cast<int>(std::ceil(std::log(r / (64.0 * std::max(diam, 1e-300))) / std::log(cmax)));
      const int word_len = std::max(1, static_cast<int>(std::ceil(std::log(r / std::max(diam, 1e-300)) / std::log(cmax))));
      CenterPolicy small = policy;
      small.max_centers = std::min<std::size_t>(policy.max_centers, 256);
      for (const auto& w : detail::sample_words(ifs.maps.size(), word_len, small)) {
        std::vector<double> x = ifs.maps.front().fixed_point();
        std::vector<double> y(x.size());
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
          ifs.maps[*it].apply(x, y);
          std::swap(x, y);
        }
        const double inner = ball_mass(measure, x, r, std::max(depth, 1));
        const double outer = ball_mass(measure, x, (1.0 + reach) * r, std::max(depth, 1));
        if (inner > 0.0 && outer / inner > e.max_ratio) {
          e.max_ratio = outer / inner;
          e.center = w;
        }
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace akit

#endif  // ASSOUAD_KIT_ESTIMATORS_HPP
