#include "swept/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace swept {

namespace {

constexpr double kTurnTol = 1e-12;

Point2 unit_direction(double deg) {
  const double r = deg * std::numbers::pi / 180.0;
  return {std::cos(r), std::sin(r)};
}

double angle_deg(Point2 d) {
  double a = std::atan2(d.y, d.x) * 180.0 / std::numbers::pi;
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a -= 360.0;
  return a;
}

// Angle modulo 180, in [0, 180).
double half_turn_deg(Point2 d) {
  double a = angle_deg(d);
  if (a >= 180.0) a -= 180.0;
  return a;
}

bool in_cone(Point2 from, Point2 t, Point2 to) {
  const int s0 = turn_sign(from, t);
  const int s1 = turn_sign(t, to);
  if (s0 < 0 || s1 < 0) return false;
  if (s0 == 0 && dot(from, t) <= 0.0) return false;
  if (s1 == 0 && dot(t, to) <= 0.0) return false;
  return true;
}

struct SideChoice {
  std::size_t minus;  // vertex active just clockwise of t
  std::size_t plus;   // vertex active just counter-clockwise of t
};

SideChoice extreme_vertex(const Polygon& p, Point2 t) {
  const std::size_t n = p.size();
  SideChoice c{n, n};
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 in = p.side(i + n - 1);
    const Point2 out = p.side(i);
    if (!in_cone(in, t, out)) continue;
    if (turn_sign(in, t) > 0) c.minus = i;
    if (turn_sign(t, out) > 0) c.plus = i;
  }
  if (c.minus == n || c.plus == n) throw GeometryError("active vertex search failed; degenerate direction");
  return c;
}

}  // namespace

int turn_sign(Point2 a, Point2 b) {
  const double c = cross(a, b);
  const double tol = kTurnTol * norm(a) * norm(b);
  if (c > tol) return 1;
  if (c < -tol) return -1;
  return 0;
}

Polygon Polygon::make(std::vector<Point2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices, got " + std::to_string(n));
  for (const auto& v : vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw GeometryError("polygon vertex is not finite");
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 a = vertices[k];
    const Point2 b = vertices[(k + 1) % n];
    if (norm(b - a) <= 1e-14 * std::max(1.0, norm(a)))
      throw GeometryError("duplicate vertex at index " + std::to_string((k + 1) % n));
  }
  int left = 0, right = 0, straight = 0;
  double turning = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 e0 = vertices[(k + 1) % n] - vertices[k];
    const Point2 e1 = vertices[(k + 2) % n] - vertices[(k + 1) % n];
    const int s = turn_sign(e0, e1);
    if (s > 0) ++left;
    else if (s < 0) ++right;
    else ++straight;
    turning += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  if (straight > 0) throw GeometryError("polygon has collinear or reversing vertices");
  if (left == 0) throw GeometryError("polygon vertices are clockwise; expected counter-clockwise");
  if (right > 0) throw GeometryError("polygon is non-convex");
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
    throw GeometryError("polygon is self-intersecting (winds more than once)");

  Polygon p;
  p.v_ = std::move(vertices);
  double scale = 0.0;
  for (const auto& v : p.v_) {
    p.wx_ = std::max(p.wx_, std::abs(v.x));
    p.hy_ = std::max(p.hy_, std::abs(v.y));
    scale = std::max(scale, norm(v));
  }
  p.symmetric_ = n % 2 == 0;
  for (std::size_t k = 0; p.symmetric_ && k < n / 2; ++k) {
    const Point2 s = p.v_[k] + p.v_[k + n / 2];
    if (norm(s) > 1e-12 * std::max(1.0, scale)) p.symmetric_ = false;
  }
  return p;
}

Polygon Polygon::regular(int n, double apothem, double rotation) {
  if (n < 3) throw GeometryError("regular polygon needs n >= 3");
  if (!(apothem > 0.0) || !std::isfinite(apothem))
    throw GeometryError("regular polygon needs a positive inscribed radius");
  const double circum = apothem / std::cos(std::numbers::pi / n);
  std::vector<Point2> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = rotation + 2.0 * std::numbers::pi * k / n;
    Point2 q{circum * std::cos(a), circum * std::sin(a)};
    if (std::abs(q.x) < 1e-14 * circum) q.x = 0.0;
    if (std::abs(q.y) < 1e-14 * circum) q.y = 0.0;
    v.push_back(q);
  }
  return make(std::move(v));
}

double Polygon::side_angle_deg(std::size_t k) const { return angle_deg(side(k)); }

Polygon Polygon::reflected_xy() const {
  std::vector<Point2> v;
  v.reserve(v_.size());
  for (std::size_t k = 0; k < v_.size(); ++k) {
    const Point2 q = v_[(v_.size() - k) % v_.size()];
    v.push_back({q.y, q.x});
  }
  return make(std::move(v));
}

Polygon Polygon::mirrored_x() const {
  std::vector<Point2> v;
  v.reserve(v_.size());
  for (std::size_t k = 0; k < v_.size(); ++k) {
    const Point2 q = v_[(v_.size() - k) % v_.size()];
    v.push_back({-q.x, q.y});
  }
  return make(std::move(v));
}

Polygon Polygon::point_reflected() const {
  std::vector<Point2> v;
  v.reserve(v_.size());
  for (const auto& q : v_) v.push_back(-q);
  return make(std::move(v));
}

// ---------------------------------------------------------------------------

std::vector<ActivePair> activity_table(const Polygon& p) {
  std::vector<double> cuts;
  for (std::size_t k = 0; k < p.size(); ++k) cuts.push_back(half_turn_deg(p.side(k)));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> uniq;
  for (double c : cuts) {
    if (uniq.empty() || c - uniq.back() > 1e-9) uniq.push_back(c);
  }
  if (uniq.size() > 1 && uniq.front() + 180.0 - uniq.back() <= 1e-9) uniq.pop_back();

  std::vector<ActivePair> table;
  for (std::size_t k = 0; k < uniq.size(); ++k) {
    const double lo = uniq[k];
    const double hi = k + 1 < uniq.size() ? uniq[k + 1] : uniq[0] + 180.0;
    const Point2 mid = unit_direction(0.5 * (lo + hi));
    ActivePair ap{extreme_vertex(p, mid).plus, extreme_vertex(p, -mid).plus, lo, hi};
    table.push_back(ap);
  }
  return table;
}

namespace {

ActivePair with_interval(const Polygon& p, std::size_t i, std::size_t j) {
  for (const auto& row : activity_table(p)) {
    if (row.i == i && row.j == j) return row;
    if (row.i == j && row.j == i) return {i, j, row.lo_deg, row.hi_deg};
  }
  return {i, j, 0.0, 0.0};
}

}  // namespace

std::vector<ActivePair> active_corners(const Polygon& p, Point2 direction) {
  const SideChoice r = extreme_vertex(p, direction);
  const SideChoice l = extreme_vertex(p, -direction);
  std::vector<ActivePair> out;
  out.push_back(with_interval(p, r.minus, l.minus));
  if (r.plus != r.minus || l.plus != l.minus) out.push_back(with_interval(p, r.plus, l.plus));
  return out;
}

std::vector<ActivePair> active_corners(const Polygon& p, double theta_deg) {
  return active_corners(p, unit_direction(theta_deg));
}

ActivePair active_pair(const Polygon& p, Point2 direction) {
  return {extreme_vertex(p, direction).plus, extreme_vertex(p, -direction).plus, 0.0, 0.0};
}

bool point_in_polygon(const Polygon& p, Point2 center, Point2 q) {
  const Point2 rel = q - center;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Point2 e = p.side(k);
    const Point2 w = rel - p.vertex(k);
    const double c = cross(e, w);
    if (c < -kTurnTol * norm(e) * std::max(1.0, norm(w))) return false;
  }
  return true;
}

std::vector<Point2> minkowski_sum(std::span<const Point2> a, std::span<const Point2> b) {
  std::vector<Point2> pts;
  pts.reserve(a.size() * b.size());
  for (const auto& u : a)
    for (const auto& v : b) pts.push_back(u + v);
  std::sort(pts.begin(), pts.end(), [](Point2 s, Point2 t) { return s.x < t.x || (s.x == t.x && s.y < t.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn_sign(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn_sign(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Polygon inflate(const Polygon& object, const Polygon& obstacle) {
  std::vector<Point2> reflected;
  for (const auto& v : obstacle.vertices()) reflected.push_back(-v);
  return Polygon::make(minkowski_sum(object.vertices(), reflected));
}

}  // namespace swept
