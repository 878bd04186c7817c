#pragma once

#include "swept/trajectory.hpp"

#include <cmath>
#include <numbers>

namespace swept {

// Maps s in [0, 1] onto a (possibly unbounded) interval. Finite intervals are
// mapped linearly; an infinite end is reached as s approaches it.
inline double domain_point(Interval d, double s) {
  const bool lo_inf = !std::isfinite(d.lo);
  const bool hi_inf = !std::isfinite(d.hi);
  if (!lo_inf && !hi_inf) {
    if (s <= 0.0) return d.lo;
    if (s >= 1.0) return d.hi;
    return d.lo + s * (d.hi - d.lo);
  }
  if (lo_inf && hi_inf) {
    if (s <= 0.0) return -kInf;
    if (s >= 1.0) return kInf;
    return std::tan(std::numbers::pi * (s - 0.5)) * 10.0;
  }
  if (hi_inf) {
    const double scale = std::max(10.0, std::abs(d.lo));
    if (s >= 1.0) return kInf;
    return d.lo + scale * s / (1.0 - s);
  }
  const double scale = std::max(10.0, std::abs(d.hi));
  if (s <= 0.0) return -kInf;
  return d.hi - scale * (1.0 - s) / s;
}

}  // namespace swept
