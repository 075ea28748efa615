#ifndef ASSOUAD_KIT_TEST_SUPPORT_HPP
#define ASSOUAD_KIT_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "assouad_kit/point_set.hpp"

namespace testing_support {

/// Small deterministic generator for property tests.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

/// Reference mesh count: every candidate cell is tested against every point with
/// the half-open rule, and a point sitting on the top lattice line of an axis
/// (where it is that axis' maximum) is credited to the cell below.
inline std::size_t enumerate_cells(const akit::PointSet& set, int k) {
  const std::size_t d = set.dim();
  const double r = std::ldexp(1.0, -k);
  std::vector<double> top(d, -INFINITY);
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) top[j] = std::max(top[j], set.point(i)[j]);
  std::set<std::vector<long long>> cells;
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::vector<long long> cell(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double x = set.point(i)[j];
      long long a = static_cast<long long>(std::floor(x / r)) - 1;
      while (!(a * r <= x && x < (a + 1) * r)) ++a;
      const bool top_lattice = x == top[j] && a * r == x;
      cell[j] = top_lattice ? a - 1 : a;
    }
    cells.insert(cell);
  }
  return cells.size();
}

inline akit::PointSet subset_in_ball(const akit::PointSet& set, const std::vector<double>& center, double R) {
  std::vector<double> coords;
  for (std::size_t i = 0; i < set.size(); ++i) {
    bool in = true;
    for (std::size_t j = 0; j < set.dim(); ++j) in = in && std::abs(set.point(i)[j] - center[j]) <= R;
    if (in) coords.insert(coords.end(), set.point(i).begin(), set.point(i).end());
  }
  return akit::PointSet(set.dim(), std::move(coords), set.resolution());
}

}  // namespace testing_support

#endif  // ASSOUAD_KIT_TEST_SUPPORT_HPP
