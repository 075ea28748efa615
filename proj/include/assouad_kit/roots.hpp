#ifndef ASSOUAD_KIT_ROOTS_HPP
#define ASSOUAD_KIT_ROOTS_HPP

#include <cmath>
#include <functional>

#include "assouad_kit/error.hpp"

namespace akit {

inline constexpr double kRootTolerance = 1e-12;

/// Root of a monotone function on [lo, hi] by bisection; f(lo) and f(hi) must
/// straddle zero.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = kRootTolerance) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  require((flo < 0.0) != (fhi < 0.0), "bisection bracket does not straddle a root");
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Root of a decreasing function on [0, inf): the upper end is doubled until f < 0.
inline double bisect_decreasing_from_zero(const std::function<double(double)>& f,
                                          double tol = kRootTolerance) {
  if (f(0.0) <= 0.0) return 0.0;
  double hi = 1.0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    require(hi < 1e12, "root search diverged");
  }
  return bisect(f, 0.0, hi, tol);
}

}  // namespace akit

#endif  // ASSOUAD_KIT_ROOTS_HPP
