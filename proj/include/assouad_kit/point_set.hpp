#ifndef ASSOUAD_KIT_POINT_SET_HPP
#define ASSOUAD_KIT_POINT_SET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "assouad_kit/error.hpp"

namespace akit {

/// Scale r = 2^{-exponent}. Larger exponent means finer scale.
struct DyadicScale {
  int exponent = 0;

  double value() const noexcept { return std::ldexp(1.0, -exponent); }

  friend bool operator==(DyadicScale, DyadicScale) = default;
  /// Orders by r, so a finer scale compares less.
  friend bool operator<(DyadicScale a, DyadicScale b) noexcept { return a.exponent > b.exponent; }
};

/// Counting results are only trusted at r >= kResolutionGate * resolution.
inline constexpr double kResolutionGate = 10.0;

/// Default cap on generated point counts; ASSOUAD_KIT_CAP overrides it.
inline std::size_t default_point_cap() {
  if (const char* env = std::getenv("ASSOUAD_KIT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 24;
}

/// A finite sample of a set in R^d.
///
/// The sample is `resolution`-dense in the set it approximates (sup norm).
/// Resolution 0 means the set is exactly these points. Coordinates are stored
/// row-major; duplicates are rejected on construction.
class PointSet {
 public:
  PointSet() = default;

  PointSet(std::size_t dim, std::vector<double> coords, double resolution, std::string label = {})
      : dim_(dim), coords_(std::move(coords)), resolution_(resolution), label_(std::move(label)) {
    require(dim_ >= 1, "ambient dimension must be positive");
    require(coords_.size() % dim_ == 0, "coordinate count is not a multiple of the dimension");
    require(resolution_ >= 0.0 && std::isfinite(resolution_), "resolution must be finite and >= 0");
    for (double c : coords_) require(std::isfinite(c), "coordinates must be finite");
    require(!has_duplicates(), "duplicate points are not allowed");
  }

  /// Builds a set from possibly repeated points, keeping the first copy of each.
  static PointSet deduplicated(std::size_t dim, std::vector<double> coords, double resolution,
                               std::string label = {}) {
    require(dim >= 1 && coords.size() % dim == 0, "malformed coordinates");
    const std::size_t n = coords.size() / dim;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto row = [&](std::size_t i) { return std::span<const double>(coords.data() + i * dim, dim); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(row(a).begin(), row(a).end(), row(b).begin(), row(b).end());
    });
    std::vector<char> keep(n, 1);
    for (std::size_t k = 1; k < n; ++k) {
      if (std::ranges::equal(row(order[k]), row(order[k - 1]))) keep[order[k]] = 0;
    }
    std::vector<double> out;
    out.reserve(coords.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (keep[i]) out.insert(out.end(), row(i).begin(), row(i).end());
    }
    return PointSet(dim, std::move(out), resolution, std::move(label));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }
  double resolution() const noexcept { return resolution_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  bool has_duplicates() const {
    const std::size_t n = size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      auto pa = point(a), pb = point(b);
      return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    });
    for (std::size_t k = 1; k < n; ++k) {
      if (std::ranges::equal(point(order[k]), point(order[k - 1]))) return true;
    }
    return false;
  }

  std::size_t dim_ = 1;
  std::vector<double> coords_;
  double resolution_ = 0.0;
  std::string label_;
};

enum class CountMethod { mesh, greedy_packing };

struct CountReport {
  DyadicScale scale;
  std::size_t count = 0;
  CountMethod method = CountMethod::mesh;
  /// Gate factor the scale was checked against.
  double gate = kResolutionGate;
};

inline double sup_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace akit

#endif  // ASSOUAD_KIT_POINT_SET_HPP
