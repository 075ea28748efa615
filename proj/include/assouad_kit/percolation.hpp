#ifndef ASSOUAD_KIT_PERCOLATION_HPP
#define ASSOUAD_KIT_PERCOLATION_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "assouad_kit/error.hpp"
#include "assouad_kit/point_set.hpp"

namespace akit {

/// Fractal (Mandelbrot) percolation on [0,1]^d: each of the m^d subcubes of a kept
/// cube is kept with probability p, independently, down to level `depth`.
struct PercolationConfig {
  int d = 2;
  int m = 2;
  double p = 0.8;
  int depth = 12;
  std::uint64_t seed = 0;

  void validate() const {
    require(d >= 1 && d <= 8, "d must lie in [1, 8]");
    require(m >= 2, "m must be >= 2");
    require(p > 0.0 && p < 1.0, "p must lie in (0,1)");
    require(depth >= 0 && depth <= 40, "depth must lie in [0, 40]");
    require(std::pow(static_cast<double>(m), static_cast<double>(d) * depth) < 9.0e18,
            "m^(d * depth) overflows the cell coordinates");
  }
  bool supercritical() const { return p > std::pow(static_cast<double>(m), -d); }
  /// d + log p / log m, the almost-sure box dimension on survival.
  double box_dimension() const { return d + std::log(p) / std::log(static_cast<double>(m)); }
};

inline constexpr const char* kPercolationHash =
    "splitmix64 chain: h = mix(seed); h = mix(h ^ level); h = mix(h ^ coord_i) per axis; u = (h >> 11) * 2^-53";

/// A cell at some level: integer coordinates in [0, m^level)^d.
struct PercolationCell {
  int level = 0;
  std::vector<std::int64_t> coords;

  friend bool operator==(const PercolationCell&, const PercolationCell&) = default;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// The uniform [0,1) draw of a cell. Level and coordinates determine the path from the root.
inline double cell_uniform(std::uint64_t seed, int level, std::span<const std::int64_t> coords) {
  std::uint64_t h = detail::mix64(seed);
  h = detail::mix64(h ^ static_cast<std::uint64_t>(level));
  for (auto c : coords) h = detail::mix64(h ^ static_cast<std::uint64_t>(c));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct PercolationTree {
  PercolationConfig config;
  /// Kept cells for levels 0..stored_levels()-1, each level flattened row-major (d per cell).
  std::vector<std::vector<std::int64_t>> levels;
  /// Z_k for k = 0..depth.
  std::vector<std::uint64_t> counts;
  std::string hash = kPercolationHash;

  int stored_levels() const { return static_cast<int>(levels.size()); }
  bool survived() const { return counts.back() > 0; }
};

namespace detail {

/// Calls fn(child coords) for each kept child of a kept cell.
template <class Fn>
void kept_children(const PercolationConfig& c, int level, std::span<const std::int64_t> coords, Fn&& fn) {
  const auto d = static_cast<std::size_t>(c.d);
  std::array<std::int64_t, 8> child{};
  std::array<int, 8> digit{};
  while (true) {
    for (std::size_t j = 0; j < d; ++j) child[j] = coords[j] * c.m + digit[j];
    const std::span<const std::int64_t> view(child.data(), d);
    if (cell_uniform(c.seed, level + 1, view) < c.p) fn(view);
    std::size_t j = 0;
    while (j < d && ++digit[j] == c.m) digit[j++] = 0;
    if (j == d) break;
  }
}

inline void count_below(const PercolationConfig& c, int level, std::span<const std::int64_t> coords,
                        std::vector<std::uint64_t>& counts) {
  ++counts[static_cast<std::size_t>(level)];
  if (level == c.depth) return;
  kept_children(c, level, coords, [&](std::span<const std::int64_t> ch) { count_below(c, level + 1, ch, counts); });
}

}  // namespace detail

/// Runs the percolation. Levels are stored while their size stays within `cap`
/// cells; deeper counts come from depth-first expansion.
inline PercolationTree simulate(const PercolationConfig& config, std::size_t cap = default_point_cap()) {
  config.validate();
  PercolationTree t;
  t.config = config;
  t.counts.assign(static_cast<std::size_t>(config.depth) + 1, 0);
  const auto d = static_cast<std::size_t>(config.d);
  t.levels.push_back(std::vector<std::int64_t>(d, 0));
  t.counts[0] = 1;
  int level = 0;
  while (level < config.depth) {
    const auto& cur = t.levels.back();
    std::vector<std::int64_t> next;
    bool over = false;
    for (std::size_t i = 0; i < cur.size() && !over; i += d) {
      detail::kept_children(config, level, std::span<const std::int64_t>(cur.data() + i, d),
                            [&](std::span<const std::int64_t> ch) { next.insert(next.end(), ch.begin(), ch.end()); });
      over = next.size() / d > cap;
    }
    if (over) break;
    ++level;
    t.counts[static_cast<std::size_t>(level)] = next.size() / d;
    t.levels.push_back(std::move(next));
  }
  if (level < config.depth) {
    std::vector<std::uint64_t> deep(t.counts.size(), 0);
    const auto& frontier = t.levels.back();
    for (std::size_t i = 0; i < frontier.size(); i += d)
      detail::count_below(config, level, std::span<const std::int64_t>(frontier.data() + i, d), deep);
    for (std::size_t k = static_cast<std::size_t>(level) + 1; k < t.counts.size(); ++k) t.counts[k] = deep[k];
  }
  return t;
}

inline std::vector<std::uint64_t> occupancy_counts(const PercolationTree& tree) { return tree.counts; }

/// Calls fn(coords) for every kept cell at `level`, expanding beyond the stored levels.
template <class Fn>
void for_each_kept(const PercolationTree& tree, int level, Fn&& fn) {
  require(level >= 0 && level <= tree.config.depth, "level out of range");
  const auto d = static_cast<std::size_t>(tree.config.d);
  if (level < tree.stored_levels()) {
    const auto& cells = tree.levels[static_cast<std::size_t>(level)];
    for (std::size_t i = 0; i < cells.size(); i += d) fn(std::span<const std::int64_t>(cells.data() + i, d));
    return;
  }
  const int base = tree.stored_levels() - 1;
  const auto& frontier = tree.levels.back();
  std::function<void(int, std::span<const std::int64_t>)> walk = [&](int lv, std::span<const std::int64_t> c) {
    if (lv == level) {
      fn(c);
      return;
    }
    detail::kept_children(tree.config, lv, c, [&](std::span<const std::int64_t> ch) { walk(lv + 1, ch); });
  };
  for (std::size_t i = 0; i < frontier.size(); i += d) walk(base, std::span<const std::int64_t>(frontier.data() + i, d));
}

namespace detail {

/// All descendants of a kept cell down to `i` further levels are kept.
inline bool full_below(const PercolationConfig& c, int level, std::span<const std::int64_t> coords, int i) {
  if (i == 0) return true;
  const auto d = static_cast<std::size_t>(c.d);
  std::array<std::int64_t, 8> child{};
  std::array<int, 8> digit{};
  while (true) {
    for (std::size_t j = 0; j < d; ++j) child[j] = coords[j] * c.m + digit[j];
    const std::span<const std::int64_t> view(child.data(), d);
    if (cell_uniform(c.seed, level + 1, view) >= c.p) return false;
    if (!full_below(c, level + 1, view, i - 1)) return false;
    std::size_t j = 0;
    while (j < d && ++digit[j] == c.m) digit[j++] = 0;
    if (j == d) return true;
  }
}

}  // namespace detail

/// Some kept cell at a level k <= depth - i all of whose depth-i descendants are kept.
inline std::optional<PercolationCell> largest_full_subgrid(const PercolationTree& tree, int i) {
  require(i >= 0, "i must be >= 0");
  const auto& c = tree.config;
  if (i > c.depth) return std::nullopt;
  for (int level = 0; level <= c.depth - i; ++level) {
    if (tree.counts[static_cast<std::size_t>(level)] == 0) break;
    std::optional<PercolationCell> found;
    // Stored levels are scanned directly; deeper ones are only reached when needed.
    for_each_kept(tree, level, [&](std::span<const std::int64_t> cell) {
      if (!found && detail::full_below(c, level, cell, i))
        found = PercolationCell{level, std::vector<std::int64_t>(cell.begin(), cell.end())};
    });
    if (found) return found;
  }
  return std::nullopt;
}

/// Largest i with a full depth-i subgrid (0 when only the root level is kept).
inline int full_subgrid_max_i(const PercolationTree& tree) {
  int best = 0;
  while (best < tree.config.depth && largest_full_subgrid(tree, best + 1)) ++best;
  return best;
}

/// Centres of the kept level-depth cells; resolution m^-depth * sqrt(d).
inline PointSet tree_to_pointset(const PercolationTree& tree, std::size_t cap = default_point_cap()) {
  const auto& c = tree.config;
  const auto d = static_cast<std::size_t>(c.d);
  const auto n = tree.counts.back();
  if (n > cap) fail(ErrorKind::cap_exceeded, "point cap exceeded: " + std::to_string(n) + " cells");
  if (n == 0) fail(ErrorKind::empty_set, "tree died out before the last level");
  const double side = std::pow(static_cast<double>(c.m), -c.depth);
  std::vector<double> coords;
  coords.reserve(n * d);
  for_each_kept(tree, c.depth, [&](std::span<const std::int64_t> cell) {
    for (auto v : cell) coords.push_back((static_cast<double>(v) + 0.5) * side);
  });
  return PointSet(d, std::move(coords), side * std::sqrt(static_cast<double>(d)),
                  "percolation seed " + std::to_string(c.seed));
}

/// Seeds seed, seed + 1, ... until one survives to the last level.
inline PercolationTree simulate_surviving(PercolationConfig config, std::size_t max_tries = 10000,
                                          std::size_t cap = default_point_cap()) {
  for (std::size_t t = 0; t < max_tries; ++t, ++config.seed) {
    auto tree = simulate(config, cap);
    if (tree.survived()) return tree;
  }
  fail(ErrorKind::empty_set, "no surviving run in " + std::to_string(max_tries) + " seeds");
}

struct LargeDeviationReport {
  std::size_t violations = 0;
  std::size_t runs = 0;
  /// Per level k: number of surviving runs with Z_k > m^(s k (1 + epsilon)).
  std::vector<std::size_t> per_level;
  std::vector<std::uint64_t> seeds;
};

/// Counts (k, run) pairs with Z_k above m^(s k (1 + epsilon)) over n_seeds surviving runs.
inline LargeDeviationReport large_deviation_check(PercolationConfig config, std::size_t n_seeds, double epsilon,
                                                  std::size_t cap = default_point_cap()) {
  config.validate();
  require(config.supercritical(), "large deviation check needs supercritical p > m^-d");
  require(epsilon > 0.0, "epsilon must be positive");
  require(n_seeds >= 1, "need at least one seed");
  const double s = config.box_dimension();
  LargeDeviationReport rep;
  rep.per_level.assign(static_cast<std::size_t>(config.depth) + 1, 0);
  std::uint64_t seed = config.seed;
  for (std::size_t tries = 0; rep.runs < n_seeds; ++tries, ++seed) {
    if (tries > 100 * n_seeds + 1000) fail(ErrorKind::empty_set, "no surviving runs");
    config.seed = seed;
    auto tree = simulate(config, cap);
    if (!tree.survived()) continue;
    ++rep.runs;
    rep.seeds.push_back(seed);
    for (int k = 1; k <= config.depth; ++k) {
      const double bound = std::pow(static_cast<double>(config.m), s * k * (1.0 + epsilon));
      if (static_cast<double>(tree.counts[static_cast<std::size_t>(k)]) > bound) {
        ++rep.violations;
        ++rep.per_level[static_cast<std::size_t>(k)];
      }
    }
  }
  return rep;
}

}  // namespace akit

#endif  // ASSOUAD_KIT_PERCOLATION_HPP
