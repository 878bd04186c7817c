#pragma once

#include "swept/geometry.hpp"
#include "swept/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace swept::testing {

inline constexpr std::uint64_t kSeed = 0x5eed2024;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Strictly convex CCW polygon: points on a rotated, shifted ellipse at sorted
// angles that are kept well apart. The origin stays inside.
inline std::vector<Point2> random_convex(Rng& rng, int min_n = 3, int max_n = 8) {
  const int n = uniform_int(rng, min_n, max_n);
  const double a = uniform(rng, 0.5, 3.0), b = uniform(rng, 0.5, 3.0), rot = uniform(rng, 0.0, 2 * std::numbers::pi);
  const double sx = uniform(rng, -0.2, 0.2) * a, sy = uniform(rng, -0.2, 0.2) * b;
  std::vector<double> angles;
  const double slot = 2 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) angles.push_back(slot * (k + uniform(rng, 0.15, 0.85)));
  std::vector<Point2> pts;
  for (double t : angles) {
    const double ex = a * std::cos(t) + sx, ey = b * std::sin(t) + sy;
    pts.push_back({ex * std::cos(rot) - ey * std::sin(rot), ex * std::sin(rot) + ey * std::cos(rot)});
  }
  return pts;
}

inline std::vector<Point2> random_symmetric(Rng& rng, int half_min = 2, int half_max = 4) {
  const int m = uniform_int(rng, half_min, half_max);
  const double a = uniform(rng, 0.5, 3.0), b = uniform(rng, 0.5, 3.0), rot = uniform(rng, 0.0, std::numbers::pi);
  std::vector<Point2> half;
  const double slot = std::numbers::pi / m;
  for (int k = 0; k < m; ++k) {
    const double t = slot * (k + uniform(rng, 0.15, 0.85));
    const double ex = a * std::cos(t), ey = b * std::sin(t);
    half.push_back({ex * std::cos(rot) - ey * std::sin(rot), ex * std::sin(rot) + ey * std::cos(rot)});
  }
  std::vector<Point2> pts = half;
  for (const auto& p : half) pts.push_back(-p);
  return pts;
}

// Winding number of the closed polygon around q; nonzero means inside. Points
// on an edge count as inside.
inline bool winding_inside(const std::vector<Point2>& poly, Point2 q, double eps = 1e-12) {
  int wn = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    const double c = cross(b - a, q - a);
    const double len = norm(b - a);
    if (std::abs(c) <= eps * len * (1 + norm(q - a)) && dot(q - a, q - b) <= eps) return true;
    if (a.y <= q.y) {
      if (b.y > q.y && c > 0) ++wn;
    } else if (b.y <= q.y && c < 0) {
      --wn;
    }
  }
  return wn != 0;
}

inline std::vector<Point2> placed(const std::vector<Point2>& poly, Point2 at) {
  std::vector<Point2> out;
  for (const auto& v : poly) out.push_back(v + at);
  return out;
}

inline bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  auto orient = [](Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    return v > 1e-12 ? 1 : (v < -1e-12 ? -1 : 0);
  };
  auto on = [](Point2 a, Point2 b, Point2 c) {
    return std::min(a.x, b.x) - 1e-12 <= c.x && c.x <= std::max(a.x, b.x) + 1e-12 &&
           std::min(a.y, b.y) - 1e-12 <= c.y && c.y <= std::max(a.y, b.y) + 1e-12;
  };
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2), o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on(p1, p2, q1)) || (o2 == 0 && on(p1, p2, q2)) || (o3 == 0 && on(q1, q2, p1)) ||
         (o4 == 0 && on(q1, q2, p2));
}

// Two closed polygons meet iff an edge pair crosses or one holds a vertex of the other.
inline bool polygons_collide(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
  return winding_inside(a, b[0]) || winding_inside(b, a[0]);
}

// Placements along the trajectory restricted to [lo, hi] in each piece's parameter.
inline std::vector<Point2> sample_curve(const Trajectory& t, double lo, double hi, int per_piece) {
  std::vector<Point2> out;
  for (const Piece& p : t.pieces()) {
    const double a = std::max(lo, p.domain().lo), b = std::min(hi, p.domain().hi);
    if (!(a < b)) continue;
    for (int k = 0; k <= per_piece; ++k) out.push_back(p.point(a + (b - a) * k / per_piece));
  }
  return out;
}

inline double max_gap(const std::vector<Point2>& pts) {
  double g = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) g = std::max(g, norm(pts[k] - pts[k - 1]));
  return g;
}

// Largest signed gap between two convex CCW polygons over all edge normals of
// both: positive means separated by at least that much, negative is overlap.
inline double separation(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  double best = -INFINITY;
  auto axes = [&](const std::vector<Point2>& p, const std::vector<Point2>& q) {
    if (p.size() < 3) return;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point2 e = p[(i + 1) % p.size()] - p[i];
      const Point2 n{e.y / norm(e), -e.x / norm(e)};
      double lo = INFINITY;
      for (const auto& v : q) lo = std::min(lo, dot(n, v - p[i]));
      best = std::max(best, lo);
    }
  };
  axes(a, b);
  axes(b, a);
  return best;
}

enum class Truth { Safe, Unsafe, Unknown };

// Ground truth for "some placement of `body` along the samples meets `other`
// at q", decided only when the answer is clear of the sampling error.
inline Truth collision_truth(const std::vector<Point2>& body, const std::vector<Point2>& other,
                             const std::vector<Point2>& samples, double gap, Point2 q, double margin) {
  const auto placed_other = placed(other, q);
  auto radius = [](const std::vector<Point2>& p) {
    double r = 0.0;
    for (const auto& v : p) r = std::max(r, norm(v));
    return r;
  };
  // Samples whose bounding circles are this far apart are clear without a test.
  const double far = radius(body) + radius(other) + margin + gap;
  double d = INFINITY;
  for (const auto& s : samples) {
    if (norm(s - q) > far) continue;
    d = std::min(d, separation(placed(body, s), placed_other));
  }
  if (d < -margin) return Truth::Unsafe;
  if (d > margin + gap / 2) return Truth::Safe;
  return Truth::Unknown;
}

// Point obstacle at q against `body` swept along the samples.
inline Truth point_truth(const std::vector<Point2>& body, const std::vector<Point2>& samples, double gap,
                         Point2 q, double margin) {
  return collision_truth(body, {Point2{0, 0}}, samples, gap, q, margin);
}

}  // namespace swept::testing
