#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace swept {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

class GeometryError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Sign of cross(a, b) with a relative dead zone, so that directions that are
// parallel up to rounding (cos 60 deg and friends) compare as ties.
int turn_sign(Point2 a, Point2 b);

// Convex polygon given by counter-clockwise vertex offsets from its center.
class Polygon {
public:
  static Polygon make(std::vector<Point2> vertices);
  // Regular n-gon with the given apothem; the first vertex sits at `rotation` radians.
  static Polygon regular(int n, double apothem, double rotation);

  std::size_t size() const { return v_.size(); }
  const std::vector<Point2>& vertices() const { return v_; }
  Point2 vertex(std::size_t i) const { return v_[i % v_.size()]; }
  // Side direction v_{k+1} - v_k.
  Point2 side(std::size_t k) const { return vertex(k + 1) - vertex(k); }

  double half_width() const { return wx_; }
  double half_height() const { return hy_; }
  bool centrally_symmetric() const { return symmetric_; }

  // Side angle of edge k in degrees, [0, 360).
  double side_angle_deg(std::size_t k) const;

  Polygon reflected_xy() const;  // mirror across the line y = x
  Polygon mirrored_x() const;    // mirror across the y axis
  Polygon point_reflected() const;

private:
  std::vector<Point2> v_;
  double wx_ = 0.0;
  double hy_ = 0.0;
  bool symmetric_ = false;
};

struct ActivePair {
  std::size_t i = 0;  // active vertex on the right of the direction of travel
  std::size_t j = 0;  // active vertex on the left
  double lo_deg = 0.0;  // validity interval [lo, hi) modulo 180 degrees
  double hi_deg = 0.0;

  friend bool operator==(const ActivePair& a, const ActivePair& b) { return a.i == b.i && a.j == b.j; }
};

// Pairs active for travel along `direction`; two pairs when it is parallel to a side.
std::vector<ActivePair> active_corners(const Polygon& p, Point2 direction);
std::vector<ActivePair> active_corners(const Polygon& p, double theta_deg);

// The pair that holds just counter-clockwise of `direction`: unique even on ties.
ActivePair active_pair(const Polygon& p, Point2 direction);

// Every pair with its angular interval, covering [0, 180).
std::vector<ActivePair> activity_table(const Polygon& p);

bool point_in_polygon(const Polygon& p, Point2 center, Point2 q);

// Convex hull of the Minkowski sum of two vertex lists (either may be a single point).
std::vector<Point2> minkowski_sum(std::span<const Point2> a, std::span<const Point2> b);

// Object grown by the point-reflected obstacle: the bodies collide at relative
// offset d iff d lies in the result.
Polygon inflate(const Polygon& object, const Polygon& obstacle);

}  // namespace swept
