#ifndef ASSOUAD_KIT_FAMILIES_HPP
#define ASSOUAD_KIT_FAMILIES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "assouad_kit/error.hpp"
#include "assouad_kit/point_set.hpp"
#include "assouad_kit/pointset_io.hpp"

namespace akit {

/// {0} u {1/n^p : n <= n_max}
struct PolynomialSequence {
  double p = 1.0;
};

/// {1/x : x in X}, X strictly increasing positive integers.
struct ReciprocalSequence {
  std::vector<std::uint64_t> xs;
};

/// {0} u {c^k : 1 <= k <= n_max}
struct GeometricSequence {
  double c = 0.5;
};

struct SequenceSpec {
  std::variant<PolynomialSequence, ReciprocalSequence, GeometricSequence> kind;
  std::uint64_t n_max = std::uint64_t{1} << 20;

  void validate() const {
    require(n_max >= 1, "n_max must be positive");
    if (auto* poly = std::get_if<PolynomialSequence>(&kind)) {
      require(poly->p > 0.0 && std::isfinite(poly->p), "polynomial exponent must be > 0");
    } else if (auto* rec = std::get_if<ReciprocalSequence>(&kind)) {
      require(!rec->xs.empty(), "reciprocal set needs at least one integer");
      require(rec->xs.front() >= 1, "reciprocal integers must be positive");
      for (std::size_t i = 1; i < rec->xs.size(); ++i)
        require(rec->xs[i] > rec->xs[i - 1], "reciprocal integers must be strictly increasing");
    } else {
      const double c = std::get<GeometricSequence>(kind).c;
      require(c > 0.0 && c < 1.0, "geometric ratio must lie in (0,1)");
    }
  }
};

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<char> composite(n + 1, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

/// Sequence sets as 1-dimensional samples.
///
/// Polynomial and geometric kinds include the accumulation point 0, and their
/// resolution is the size of the discarded tail (n_max^-p, c^n_max). A finite
/// reciprocal list is represented exactly (resolution 0); integers above n_max
/// are dropped.
inline PointSet generate_sequence(const SequenceSpec& spec) {
  spec.validate();
  std::vector<double> xs;
  double resolution = 0.0;
  std::string label;
  if (auto* poly = std::get_if<PolynomialSequence>(&spec.kind)) {
    xs.reserve(spec.n_max + 1);
    xs.push_back(0.0);
    for (std::uint64_t n = 1; n <= spec.n_max; ++n)
      xs.push_back(poly->p == 1.0 ? 1.0 / static_cast<double>(n) : std::pow(static_cast<double>(n), -poly->p));
    resolution = std::pow(static_cast<double>(spec.n_max), -poly->p);
    label = "polynomial p=" + format_double(poly->p) + " n_max=" + std::to_string(spec.n_max);
  } else if (auto* rec = std::get_if<ReciprocalSequence>(&spec.kind)) {
    for (auto x : rec->xs)
      if (x <= spec.n_max) xs.push_back(1.0 / static_cast<double>(x));
    require(!xs.empty(), "no reciprocal integers below n_max");
    label = "reciprocal |X|=" + std::to_string(xs.size());
  } else {
    const double c = std::get<GeometricSequence>(spec.kind).c;
    xs.push_back(0.0);
    double v = 1.0;
    for (std::uint64_t k = 1; k <= spec.n_max; ++k) {
      v *= c;
      if (v == 0.0) break;
      xs.push_back(v);
    }
    resolution = v;
    label = "geometric c=" + format_double(c) + " n_max=" + std::to_string(spec.n_max);
  }
  return PointSet::deduplicated(1, std::move(xs), resolution, std::move(label));
}

/// Polynomial spiral {x^-p exp(ix) : 1 < x <= x_max}.
///
/// Sampling is uniform in angle with `samples_per_turn` points per turn. When
/// `max_chord` is positive, the angular step on each stretch is refined until
/// consecutive samples are at most that far apart; this keeps the inner turns and
/// the outer turns at the same resolution.
struct SpiralSpec {
  double p = 1.0;
  double x_max = 1.0 + 2.0 * std::numbers::pi;
  std::uint64_t samples_per_turn = 64;
  double max_chord = 0.0;
  /// Permits fewer than 64 samples per turn (tiny worked examples only).
  bool allow_coarse = false;

  static constexpr std::uint64_t kMinSamplesPerTurn = 64;

  static SpiralSpec with_turns(double p, double turns) {
    SpiralSpec s;
    s.p = p;
    s.x_max = 1.0 + 2.0 * std::numbers::pi * turns;
    return s;
  }

  void validate() const {
    require(p > 0.0 && std::isfinite(p), "spiral exponent must be > 0");
    require(std::isfinite(x_max) && x_max > 1.0, "x_max must exceed 1");
    require(samples_per_turn >= 1, "samples_per_turn must be positive");
    require(allow_coarse || samples_per_turn >= kMinSamplesPerTurn, "samples_per_turn must be at least 64");
    require(max_chord >= 0.0, "max_chord must be >= 0");
    if (x_max < 1.0 + 2.0 * std::numbers::pi * (1.0 - 1e-12))
      fail(ErrorKind::invalid_argument, "x_max too small to complete one turn");
  }
};

inline PointSet generate_spiral(const SpiralSpec& spec) {
  spec.validate();
  const double two_pi = 2.0 * std::numbers::pi;
  const double base_step = two_pi / static_cast<double>(spec.samples_per_turn);
  auto at = [&](double x) {
    const double rad = std::pow(x, -spec.p);
    return std::pair{rad * std::cos(x), rad * std::sin(x)};
  };
  std::vector<double> coords;
  double max_chord = 0.0;
  std::pair<double, double> prev{0.0, 0.0};
  bool have_prev = false;
  const double last = spec.x_max * (1.0 + 1e-15);
  if (spec.max_chord <= 0.0) {
    for (std::uint64_t j = 1;; ++j) {
      const double x = 1.0 + static_cast<double>(j) * base_step;
      if (x > last) break;
      const auto pt = at(x);
      if (have_prev) max_chord = std::max(max_chord, std::hypot(pt.first - prev.first, pt.second - prev.second));
      coords.push_back(pt.first);
      coords.push_back(pt.second);
      prev = pt;
      have_prev = true;
    }
  } else {
    // Per turn, refine the angular step by a power of two until the arc length
    // bound radius * step * sqrt(1 + p^2) is below max_chord.
    const double stretch = std::sqrt(1.0 + spec.p * spec.p);
    double turn_start = 1.0;
    while (turn_start < last) {
      const double radius = std::pow(turn_start, -spec.p);
      double step = base_step;
      while (radius * step * stretch > spec.max_chord) step *= 0.5;
      const double turn_end = std::min(turn_start + two_pi, spec.x_max);
      for (std::uint64_t j = 1;; ++j) {
        const double x = turn_start + static_cast<double>(j) * step;
        if (x > turn_end * (1.0 + 1e-15)) break;
        const auto pt = at(x);
        if (have_prev) max_chord = std::max(max_chord, std::hypot(pt.first - prev.first, pt.second - prev.second));
        coords.push_back(pt.first);
        coords.push_back(pt.second);
        prev = pt;
        have_prev = true;
      }
      turn_start += two_pi;
    }
  }
  require(!coords.empty(), "spiral sample is empty");
  return PointSet::deduplicated(2, std::move(coords), max_chord,
                                "spiral p=" + format_double(spec.p) + " x_max=" + format_double(spec.x_max));
}

}  // namespace akit

#endif  // ASSOUAD_KIT_FAMILIES_HPP
