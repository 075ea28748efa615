#ifndef ASSOUAD_KIT_COVERING_HPP
#define ASSOUAD_KIT_COVERING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "assouad_kit/error.hpp"
#include "assouad_kit/point_set.hpp"

namespace akit {

namespace detail {

inline void check_scale(const PointSet& set, DyadicScale r) {
  if (set.empty()) fail(ErrorKind::empty_set, "empty set");
  require(r.exponent >= -60 && r.exponent <= 60, "scale exponent out of range");
  if (r.value() < kResolutionGate * set.resolution()) {
    fail(ErrorKind::resolution_violation,
         "resolution violation: r = 2^-" + std::to_string(r.exponent) + " is below " +
             std::to_string(kResolutionGate) + " x resolution " + std::to_string(set.resolution()));
  }
}

/// Index of the origin-anchored half-open cell [a, a + 2^-k) containing x.
inline std::int64_t cell_index(double x, int k) {
  const double scaled = std::ldexp(x, k);
  require(std::abs(scaled) < 4.0e18, "coordinate too large for the mesh at this scale");
  return static_cast<std::int64_t>(std::floor(scaled));
}

inline bool on_lattice(double x, int k) {
  const double scaled = std::ldexp(x, k);
  return scaled == std::floor(scaled);
}

/// Counts distinct rows of a row-major key matrix. Reorders `keys`.
inline std::size_t count_distinct_rows(std::vector<std::int64_t>& keys, std::size_t dim) {
  const std::size_t n = keys.size() / dim;
  if (n == 0) return 0;
  if (dim == 1) {
    std::sort(keys.begin(), keys.end());
    return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }
  if (dim == 2) {
    std::vector<std::pair<std::int64_t, std::int64_t>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = {keys[2 * i], keys[2 * i + 1]};
    std::sort(rows.begin(), rows.end());
    return static_cast<std::size_t>(std::unique(rows.begin(), rows.end()) - rows.begin());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return std::span<const std::int64_t>(keys.data() + i * dim, dim); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ra = row(a), rb = row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (!std::ranges::equal(row(order[i]), row(order[i - 1]))) ++distinct;
  }
  return distinct;
}

/// Mesh keys of a list of points with the top lattice hyperplane folded down:
/// on each axis, if the largest coordinate sits exactly on a lattice line, points
/// on it join the cell below.
inline std::vector<std::int64_t> folded_keys(std::span<const double> coords, std::size_t dim, int k) {
  const std::size_t n = coords.size() / dim;
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dim; ++j) hi[j] = std::max(hi[j], coords[i * dim + j]);
  std::vector<char> fold(dim);
  for (std::size_t j = 0; j < dim; ++j) fold[j] = on_lattice(hi[j], k);
  std::vector<std::int64_t> keys(coords.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double x = coords[i * dim + j];
      std::int64_t key = cell_index(x, k);
      if (fold[j] && x == hi[j]) --key;
      keys[i * dim + j] = key;
    }
  }
  return keys;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

/// Number of occupied cells of the origin-anchored dyadic mesh of side r.
inline CountReport mesh_count(const PointSet& set, DyadicScale r) {
  detail::check_scale(set, r);
  auto keys = detail::folded_keys(set.coords(), set.dim(), r.exponent);
  return {r, detail::count_distinct_rows(keys, set.dim()), CountMethod::mesh};
}

/// Size of a greedy maximal r-separated subset, first point wins in input order.
/// Separation is strict and measured in the sup norm.
inline CountReport packing_count(const PointSet& set, DyadicScale r) {
  detail::check_scale(set, r);
  const std::size_t dim = set.dim();
  const int k = r.exponent;
  const double rv = r.value();
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, detail::KeyHash> buckets;
  std::size_t neighbours = 1;
  for (std::size_t j = 0; j < dim; ++j) neighbours *= 3;

  std::size_t kept = 0;
  std::vector<std::int64_t> key(dim), probe(dim);
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto p = set.point(i);
    for (std::size_t j = 0; j < dim; ++j) key[j] = detail::cell_index(p[j], k);
    bool separated = true;
    for (std::size_t code = 0; code < neighbours && separated; ++code) {
      std::size_t c = code;
      for (std::size_t j = 0; j < dim; ++j) {
        probe[j] = key[j] + static_cast<std::int64_t>(c % 3) - 1;
        c /= 3;
      }
      auto it = buckets.find(probe);
      if (it == buckets.end()) continue;
      for (std::size_t q : it->second) {
        if (sup_distance(p, set.point(q)) <= rv) {
          separated = false;
          break;
        }
      }
    }
    if (separated) {
      buckets[key].push_back(i);
      ++kept;
    }
  }
  return {r, kept, CountMethod::greedy_packing};
}

/// True when some sample point lies within the set's resolution of `center`.
inline bool center_on_set(const PointSet& set, std::span<const double> center) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (sup_distance(set.point(i), center) <= set.resolution()) return true;
  }
  return false;
}

/// Indices of points in the closed sup-norm ball B(center, radius).
inline std::vector<std::size_t> ball_members(const PointSet& set, std::span<const double> center,
                                             double radius) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (sup_distance(set.point(i), center) <= radius) out.push_back(i);
  }
  return out;
}

/// Mesh count of the part of the set inside the closed sup-norm ball B(center, R).
inline CountReport local_cover_count(const PointSet& set, std::span<const double> center, double R,
                                     DyadicScale r) {
  detail::check_scale(set, r);
  require(center.size() == set.dim(), "center dimension mismatch");
  require(R > r.value(), "local count needs r < R");
  if (!center_on_set(set, center)) fail(ErrorKind::center_off_set, "center off-set");
  const auto members = ball_members(set, center, R);
  std::vector<double> sub;
  sub.reserve(members.size() * set.dim());
  for (auto i : members) {
    auto p = set.point(i);
    sub.insert(sub.end(), p.begin(), p.end());
  }
  auto keys = detail::folded_keys(sub, set.dim(), r.exponent);
  return {r, detail::count_distinct_rows(keys, set.dim()), CountMethod::mesh};
}

/// Occupied mesh cells at one dyadic scale, sorted so that ball queries touch only
/// the cells they overlap. Gives the same answer as local_cover_count.
class CoverIndex {
 public:
  CoverIndex(const PointSet& set, DyadicScale r) : set_(&set), dim_(set.dim()), k_(r.exponent) {
    detail::check_scale(set, r);
    const std::size_t n = set.size();
    std::vector<std::int64_t> raw(n * dim_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < dim_; ++j) raw[i * dim_ + j] = detail::cell_index(set.point(i)[j], k_);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    auto row = [&](std::size_t i) { return std::span<const std::int64_t>(raw.data() + i * dim_, dim_); };
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      auto ra = row(a), rb = row(b);
      return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t i = order_[s];
      if (s == 0 || !std::ranges::equal(row(i), row(order_[s - 1]))) {
        keys_.insert(keys_.end(), row(i).begin(), row(i).end());
        begin_.push_back(s);
        lo_.insert(lo_.end(), set.point(i).begin(), set.point(i).end());
        hi_.insert(hi_.end(), set.point(i).begin(), set.point(i).end());
      } else {
        const std::size_t c = begin_.size() - 1;
        for (std::size_t j = 0; j < dim_; ++j) {
          lo_[c * dim_ + j] = std::min(lo_[c * dim_ + j], set.point(i)[j]);
          hi_[c * dim_ + j] = std::max(hi_[c * dim_ + j], set.point(i)[j]);
        }
      }
    }
    begin_.push_back(n);
  }

  std::size_t cells() const noexcept { return begin_.size() - 1; }
  DyadicScale scale() const noexcept { return {k_}; }

  /// Mesh count of the points inside the closed sup-norm ball B(center, R).
  std::size_t count(std::span<const double> center, double R) const {
    Query q{center, R, {}, {}, {}, {}, {}};
    q.box_lo.resize(dim_);
    q.box_hi.resize(dim_);
    q.key_lo.resize(dim_);
    q.key_hi.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      q.box_lo[j] = center[j] - R;
      q.box_hi[j] = center[j] + R;
      q.key_lo[j] = detail::cell_index(q.box_lo[j], k_);
      q.key_hi[j] = detail::cell_index(q.box_hi[j], k_);
    }
    q.maxc.assign(dim_, -std::numeric_limits<double>::infinity());
    hits_.clear();
    visit(q, 0, cells(), 0);
    if (hits_.empty()) return 0;
    // Fold cells that hold only the maximal lattice-aligned coordinate.
    std::vector<std::int64_t> folded;
    folded.reserve(hits_.size() * dim_);
    for (std::size_t c : hits_) {
      for (std::size_t j = 0; j < dim_; ++j) {
        std::int64_t key = keys_[c * dim_ + j];
        if (detail::on_lattice(q.maxc[j], k_) && key == detail::cell_index(q.maxc[j], k_)) --key;
        folded.push_back(key);
      }
    }
    return detail::count_distinct_rows(folded, dim_);
  }

 private:
  struct Query {
    std::span<const double> center;
    double R;
    std::vector<double> box_lo, box_hi;
    std::vector<std::int64_t> key_lo, key_hi;
    std::vector<double> maxc;
  };

  std::int64_t key(std::size_t cell, std::size_t axis) const { return keys_[cell * dim_ + axis]; }

  void visit(Query& q, std::size_t b, std::size_t e, std::size_t axis) const {
    auto first = std::partition_point(begin_iter(b), begin_iter(e),
                                      [&](std::size_t c) { return key(c, axis) < q.key_lo[axis]; });
    auto last = std::partition_point(first, begin_iter(e),
                                     [&](std::size_t c) { return key(c, axis) <= q.key_hi[axis]; });
    std::size_t s = *first, t = *last;
    if (axis + 1 == dim_) {
      for (std::size_t c = s; c < t; ++c) test_cell(q, c);
      return;
    }
    while (s < t) {
      const std::int64_t v = key(s, axis);
      auto blk = std::partition_point(begin_iter(s), begin_iter(t),
                                      [&](std::size_t c) { return key(c, axis) <= v; });
      visit(q, s, *blk, axis + 1);
      s = *blk;
    }
  }

  void test_cell(Query& q, std::size_t c) const {
    bool inside = true, disjoint = false;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double lo = lo_[c * dim_ + j], hi = hi_[c * dim_ + j];
      if (hi < q.box_lo[j] || lo > q.box_hi[j]) disjoint = true;
      if (lo < q.box_lo[j] || hi > q.box_hi[j]) inside = false;
    }
    if (disjoint) return;
    if (inside) {
      hits_.push_back(c);
      for (std::size_t j = 0; j < dim_; ++j) q.maxc[j] = std::max(q.maxc[j], hi_[c * dim_ + j]);
      return;
    }
    bool any = false;
    for (std::size_t s = begin_[c]; s < begin_[c + 1]; ++s) {
      auto p = set_->point(order_[s]);
      if (sup_distance(p, q.center) <= q.R) {
        any = true;
        for (std::size_t j = 0; j < dim_; ++j) q.maxc[j] = std::max(q.maxc[j], p[j]);
      }
    }
    if (any) hits_.push_back(c);
  }

  // Iterator over cell ids [0, cells()], used with partition_point.
  struct CellIter {
    using iterator_category = std::random_access_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::size_t*;
    using reference = std::size_t;
    std::size_t v;
    std::size_t operator*() const { return v; }
    CellIter& operator++() { ++v; return *this; }
    CellIter operator++(int) { auto t = *this; ++v; return t; }
    CellIter& operator--() { --v; return *this; }
    CellIter& operator+=(difference_type d) { v += d; return *this; }
    CellIter& operator-=(difference_type d) { v -= d; return *this; }
    CellIter operator+(difference_type d) const { return {v + d}; }
    CellIter operator-(difference_type d) const { return {v - d}; }
    difference_type operator-(CellIter o) const { return static_cast<difference_type>(v) - static_cast<difference_type>(o.v); }
    std::size_t operator[](difference_type d) const { return v + d; }
    bool operator==(const CellIter&) const = default;
    auto operator<=>(const CellIter&) const = default;
  };
  static CellIter begin_iter(std::size_t v) { return {v}; }

  const PointSet* set_;
  std::size_t dim_;
  int k_;
  std::vector<std::size_t> order_;
  std::vector<std::int64_t> keys_;
  std::vector<std::size_t> begin_;
  std::vector<double> lo_, hi_;
  mutable std::vector<std::size_t> hits_;
};

/// Largest pairwise Euclidean distance in the sample.
inline double diameter(const PointSet& set) {
  if (set.empty()) fail(ErrorKind::empty_set, "empty set");
  const std::size_t n = set.size();
  if (set.dim() == 1) {
    auto [lo, hi] = std::minmax_element(set.coords().begin(), set.coords().end());
    return *hi - *lo;
  }
  std::vector<std::size_t> candidates(n);
  std::iota(candidates.begin(), candidates.end(), 0);
  if (set.dim() == 2 && n > 3) {
    // The farthest pair lies on the convex hull (monotone chain).
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      auto pa = set.point(a), pb = set.point(b);
      return pa[0] < pb[0] || (pa[0] == pb[0] && pa[1] < pb[1]);
    });
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
      auto po = set.point(o), pa = set.point(a), pb = set.point(b);
      return (pa[0] - po[0]) * (pb[1] - po[1]) - (pa[1] - po[1]) * (pb[0] - po[0]);
    };
    std::vector<std::size_t> hull(2 * n);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (h >= 2 && cross(hull[h - 2], hull[h - 1], candidates[i]) <= 0) --h;
      hull[h++] = candidates[i];
    }
    for (std::size_t i = n - 1, t = h + 1; i-- > 0;) {
      while (h >= t && cross(hull[h - 2], hull[h - 1], candidates[i]) <= 0) --h;
      hull[h++] = candidates[i];
    }
    hull.resize(h > 1 ? h - 1 : h);
    candidates = std::move(hull);
  }
  double best = 0.0;
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a + 1; b < candidates.size(); ++b)
      best = std::max(best, euclidean_distance(set.point(candidates[a]), set.point(candidates[b])));
  return best;
}

/// Cartesian product A x B.
inline PointSet product_set(const PointSet& a, const PointSet& b, std::size_t cap = default_point_cap()) {
  if (a.empty() || b.empty()) fail(ErrorKind::empty_set, "empty set");
  if (a.size() > cap / b.size()) fail(ErrorKind::cap_exceeded, "product too large");
  const std::size_t dim = a.dim() + b.dim();
  std::vector<double> coords;
  coords.reserve(a.size() * b.size() * dim);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto pa = a.point(i), pb = b.point(j);
      coords.insert(coords.end(), pa.begin(), pa.end());
      coords.insert(coords.end(), pb.begin(), pb.end());
    }
  }
  return PointSet(dim, std::move(coords), std::max(a.resolution(), b.resolution()),
                  a.label() + " x " + b.label());
}

/// All pairwise Euclidean distances |x - y| (including 0), sorted and deduplicated.
inline PointSet distance_set(const PointSet& set, std::size_t cap = default_point_cap()) {
  if (set.empty()) fail(ErrorKind::empty_set, "empty set");
  if (set.size() > cap / set.size()) fail(ErrorKind::cap_exceeded, "distance set too large");
  std::vector<double> d;
  d.reserve(set.size() * (set.size() + 1) / 2);
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i; j < set.size(); ++j) d.push_back(euclidean_distance(set.point(i), set.point(j)));
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return PointSet(1, std::move(d), 2.0 * set.resolution(), "D(" + set.label() + ")");
}

}  // namespace akit

#endif  // ASSOUAD_KIT_COVERING_HPP
