#include "swept/geometry.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <set>

using namespace swept;
using namespace swept::testing;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Polygon rectangle(double w, double h) { return Polygon::make({{w, h}, {-w, h}, {-w, -h}, {w, -h}}); }

// Flat-topped hexagon numbered as in the usual figure: v1 is the lower right
// corner, then counter-clockwise. Index k holds v_{k+1}.
Polygon figure_hexagon() { return Polygon::regular(6, std::cos(std::numbers::pi / 6), -60.0 * kDeg); }

using PairSet = std::set<std::set<std::size_t>>;

PairSet as_sets(const std::vector<ActivePair>& pairs) {
  PairSet out;
  for (const auto& p : pairs) out.insert({p.i, p.j});
  return out;
}

// Brute force: the active vertices for travel at angle theta are the support
// vertices in the two directions normal to the travel direction. At a tie the
// pairs on either side of theta are both active.
std::set<std::size_t> support_pair(const Polygon& p, double theta_deg) {
  const Point2 n{-std::sin(theta_deg * kDeg), std::cos(theta_deg * kDeg)};
  std::size_t left = 0, right = 0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (dot(p.vertex(k), n) > dot(p.vertex(left), n)) left = k;
    if (dot(p.vertex(k), n) < dot(p.vertex(right), n)) right = k;
  }
  return {left, right};
}

PairSet brute_force_pairs(const Polygon& p, double theta_deg) {
  return {support_pair(p, theta_deg - 1e-7), support_pair(p, theta_deg + 1e-7)};
}

}  // namespace

TEST(Polygon, RectangleExtents) {
  const Polygon r = rectangle(2, 1);
  EXPECT_EQ(r.half_width(), 2.0);
  EXPECT_EQ(r.half_height(), 1.0);
  EXPECT_TRUE(r.centrally_symmetric());
  EXPECT_EQ(r.side_angle_deg(0), 180.0);
  EXPECT_EQ(r.side_angle_deg(1), 270.0);
}

TEST(Polygon, RejectsInvalidShapes) {
  EXPECT_THROW(Polygon::make({{0, 0}, {2, 1}, {0, 2}, {1, 1}}), GeometryError);  // chevron
  EXPECT_THROW(Polygon::make({{2, -1}, {-2, -1}, {-2, 1}, {2, 1}}), GeometryError);  // clockwise
  EXPECT_THROW(Polygon::make({{1, 0}, {1, 0}, {0, 1}}), GeometryError);
  EXPECT_THROW(Polygon::make({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), GeometryError);  // collinear
  EXPECT_THROW(Polygon::make({{0, 0}, {1, 0}}), GeometryError);
  // A pentagram winds twice.
  std::vector<Point2> star;
  for (int k = 0; k < 5; ++k) star.push_back({std::cos(k * 144 * kDeg), std::sin(k * 144 * kDeg)});
  EXPECT_THROW(Polygon::make(star), GeometryError);
}

TEST(Polygon, HexagonOfCircumradiusTwo) {
  const Polygon h = Polygon::regular(6, 2 * std::cos(std::numbers::pi / 6), 0.0);
  EXPECT_TRUE(h.centrally_symmetric());
  for (const auto& v : h.vertices()) EXPECT_NEAR(norm(v), 2.0, 1e-12);
  EXPECT_NEAR(h.half_width(), 2.0, 1e-12);
  EXPECT_NEAR(h.half_height(), std::sqrt(3.0), 1e-12);
}

TEST(Polygon, AsymmetricIsDetected) {
  EXPECT_FALSE(Polygon::make({{1, 0}, {0, 1}, {-1, -1}}).centrally_symmetric());
}

TEST(RegularPolygon, ApothemSetsCircumradius) {
  const Polygon h = Polygon::regular(6, 1.0, 0.0);
  // circumradius = apothem / cos(pi/n)
  for (const auto& v : h.vertices()) EXPECT_NEAR(norm(v), 2.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(norm(h.vertex(0)), 1.1547, 1e-4);
}

TEST(RegularPolygon, RotatedSquareIsAxisAligned) {
  const Polygon s = Polygon::regular(4, 1.0, 45.0 * kDeg);
  EXPECT_NEAR(s.half_width(), 1.0, 1e-12);
  EXPECT_NEAR(s.half_height(), 1.0, 1e-12);
  for (const auto& v : s.vertices()) {
    EXPECT_NEAR(std::abs(v.x), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(v.y), 1.0, 1e-12);
  }
}

TEST(RegularPolygon, RejectsDegenerateInput) {
  EXPECT_THROW(Polygon::regular(6, 0.0, 0.0), GeometryError);
  EXPECT_THROW(Polygon::regular(2, 1.0, 0.0), GeometryError);
}

TEST(RegularPolygon, InscribedCircleIsContained) {
  Rng rng(kSeed);
  for (int k = 0; k < 200; ++k) {
    const int n = uniform_int(rng, 3, 12);
    const double a = uniform(rng, 0.1, 5.0);
    const Polygon p = Polygon::regular(n, a, uniform(rng, 0, 6.3));
    for (std::size_t e = 0; e < p.size(); ++e) {
      const Point2 s = p.side(e);
      const double dist = cross(s, -p.vertex(e)) / norm(s);  // origin is left of every CCW edge
      ASSERT_NEAR(dist, a, 1e-9 * a);
    }
  }
}

TEST(ActiveCorners, FigureHexagonTable) {
  const Polygon h = figure_hexagon();
  const std::set<std::size_t> v14{0, 3}, v25{1, 4}, v36{2, 5};
  for (int deg = 0; deg < 180; ++deg) {
    PairSet expect;
    if (deg <= 60) expect.insert(v14);
    if (deg >= 60 && deg <= 120) expect.insert(v25);
    if (deg >= 120 || deg == 0) expect.insert(v36);
    EXPECT_EQ(as_sets(active_corners(h, static_cast<double>(deg))), expect) << deg << " deg";
  }
}

TEST(ActiveCorners, RectangleDiagonals) {
  const Polygon r = rectangle(2, 1);  // 0 top-right, 1 top-left, 2 bottom-left, 3 bottom-right
  EXPECT_EQ(as_sets(active_corners(r, 135.0)), (PairSet{{0, 2}}));
  EXPECT_EQ(as_sets(active_corners(r, 45.0)), (PairSet{{1, 3}}));
  // Direction of travel decides which vertex is on the right.
  const auto down = active_corners(r, Point2{1, -2});
  ASSERT_EQ(down.size(), 1u);
  EXPECT_EQ(down[0].i, 2u);
  EXPECT_EQ(down[0].j, 0u);
}

TEST(ActiveCorners, TieReportsBothPairs) {
  const Polygon r = rectangle(2, 1);
  EXPECT_EQ(as_sets(active_corners(r, 0.0)), (PairSet{{0, 2}, {1, 3}}));
  EXPECT_EQ(as_sets(active_corners(r, 90.0)), (PairSet{{0, 2}, {1, 3}}));
}

TEST(ActiveCornersProperty, MatchesSupportVertices) {
  Rng rng(kSeed + 10);
  for (int k = 0; k < 300; ++k) {
    const Polygon p = Polygon::make(random_convex(rng));
    const double theta = uniform(rng, 0.0, 180.0);
    ASSERT_EQ(as_sets(active_corners(p, theta)), brute_force_pairs(p, theta)) << "case " << k;
  }
}

TEST(ActiveCornersProperty, SymmetricPolygonsPairOppositeVertices) {
  Rng rng(kSeed + 11);
  for (int k = 0; k < 300; ++k) {
    const Polygon p = Polygon::make(random_symmetric(rng));
    ASSERT_TRUE(p.centrally_symmetric());
    for (const auto& pair : active_corners(p, uniform(rng, 0.0, 180.0))) {
      ASSERT_NEAR(p.vertex(pair.j).x, -p.vertex(pair.i).x, 1e-12);
      ASSERT_NEAR(p.vertex(pair.j).y, -p.vertex(pair.i).y, 1e-12);
    }
  }
}

TEST(ActiveCornersProperty, ActivityIntervalsPartitionTheHalfTurn) {
  Rng rng(kSeed + 12);
  for (int k = 0; k < 250; ++k) {
    const Polygon p = Polygon::make(random_convex(rng));
    auto table = activity_table(p);
    ASSERT_FALSE(table.empty());
    std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) { return a.lo_deg < b.lo_deg; });
    // Rows start at a side angle and may run past 180; together they span one half turn.
    EXPECT_GE(table.front().lo_deg, 0.0);
    EXPECT_LT(table.front().lo_deg, 180.0);
    EXPECT_NEAR(table.back().hi_deg - table.front().lo_deg, 180.0, 1e-9);
    for (std::size_t r = 0; r + 1 < table.size(); ++r) {
      ASSERT_LT(table[r].lo_deg, table[r].hi_deg);
      ASSERT_NEAR(table[r].hi_deg, table[r + 1].lo_deg, 1e-12);
    }
    // Each row agrees with the pair found at its midpoint.
    for (const auto& row : table) {
      const double mid = std::fmod(0.5 * (row.lo_deg + row.hi_deg), 180.0);
      ASSERT_EQ(as_sets(active_corners(p, mid)), (PairSet{{row.i, row.j}}));
    }
  }
}

TEST(PointInPolygon, SpecExamples) {
  const Polygon r = rectangle(2, 1);
  EXPECT_TRUE(point_in_polygon(r, {5, -10}, {5, -10.5}));
  EXPECT_FALSE(point_in_polygon(r, {5, -10}, {8, -10}));
  const Polygon h = Polygon::regular(6, std::sqrt(3.0), 0.0);
  const Point2 mid = 0.5 * (h.vertex(0) + h.vertex(1));
  EXPECT_TRUE(point_in_polygon(h, {0, 0}, mid));
  EXPECT_TRUE(point_in_polygon(h, {0, 0}, h.vertex(3)));
  EXPECT_FALSE(point_in_polygon(h, {0, 0}, 1.0001 * mid));
}

TEST(PointInPolygonProperty, AgreesWithWindingNumber) {
  Rng rng(kSeed + 13);
  int queries = 0;
  while (queries < 100000) {
    const auto verts = random_convex(rng);
    const Polygon p = Polygon::make(verts);
    const Point2 c{uniform(rng, -5, 5), uniform(rng, -5, 5)};
    const auto world = placed(verts, c);
    for (int k = 0; k < 100; ++k, ++queries) {
      const Point2 q{c.x + uniform(rng, -4, 4), c.y + uniform(rng, -4, 4)};
      ASSERT_EQ(point_in_polygon(p, c, q), winding_inside(world, q)) << q.x << "," << q.y;
    }
  }
}

TEST(Inflate, RectanglesAddExtents) {
  const Polygon sum = inflate(rectangle(2, 1), rectangle(0.5, 0.25));
  ASSERT_EQ(sum.size(), 4u);
  EXPECT_EQ(sum.half_width(), 2.5);
  EXPECT_EQ(sum.half_height(), 1.25);
}

TEST(Inflate, SinglePointIsIdentity) {
  const Polygon h = Polygon::regular(6, 1.0, 0.3);
  const auto sum = minkowski_sum(h.vertices(), std::vector<Point2>{{0, 0}});
  ASSERT_EQ(sum.size(), h.size());
  for (const auto& v : h.vertices()) {
    const bool found = std::any_of(sum.begin(), sum.end(), [&](Point2 s) { return norm(s - v) < 1e-12; });
    EXPECT_TRUE(found);
  }
}

TEST(Inflate, HexagonAndRectangleCollisionChecks) {
  const Polygon hex = Polygon::regular(6, std::sqrt(3.0), 0.0);
  const Polygon box = rectangle(1.0, 0.5);
  const Polygon sum = inflate(hex, box);
  EXPECT_LE(sum.size(), 10u);
  Rng rng(kSeed + 14);
  for (int k = 0; k < 10000; ++k) {
    const Point2 d{uniform(rng, -5, 5), uniform(rng, -4, 4)};
    const bool oracle = polygons_collide(hex.vertices(), placed(box.vertices(), d));
    ASSERT_EQ(point_in_polygon(sum, {0, 0}, d), oracle) << d.x << "," << d.y;
  }
}

TEST(InflateProperty, CommutesUpToReflectionAndStaysConvex) {
  Rng rng(kSeed + 15);
  for (int k = 0; k < 200; ++k) {
    const Polygon a = Polygon::make(random_convex(rng));
    const Polygon b = Polygon::make(random_convex(rng));
    const Polygon ab = inflate(a, b);
    const Polygon ba = inflate(b, a).point_reflected();
    ASSERT_EQ(ab.size(), ba.size());
    for (const auto& v : ab.vertices()) {
      const bool found = std::any_of(ba.vertices().begin(), ba.vertices().end(),
                                     [&](Point2 w) { return norm(w - v) < 1e-9; });
      ASSERT_TRUE(found);
    }
    // Collision reduction holds at random offsets.
    for (int s = 0; s < 20; ++s) {
      const Point2 d{uniform(rng, -7, 7), uniform(rng, -7, 7)};
      ASSERT_EQ(point_in_polygon(ab, {0, 0}, d), polygons_collide(a.vertices(), placed(b.vertices(), d)));
    }
  }
}
