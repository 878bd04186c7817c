#pragma once

#include "swept/geometry.hpp"
#include "swept/region.hpp"
#include "swept/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swept {

struct Grid {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  double step = 0.0;

  void validate() const;  // throws std::invalid_argument for an empty or degenerate grid
  std::size_t nx() const;
  std::size_t ny() const;
  std::size_t size() const { return nx() * ny(); }
  Point2 at(std::size_t ix, std::size_t iy) const { return {x0 + ix * step, y0 + iy * step}; }
};

struct OracleConfig {
  double trajectory_step = 1e-2;  // maximum distance between consecutive sampled centers
  Grid grid;
  std::optional<double> margin;  // boundary margin; default is twice the largest sample gap
  std::vector<Point2> extra_placements;  // must lie on the trajectory; others are ignored
  std::size_t max_reported = 50;
};

// Dense samples of the center path, restricted to where a placement can touch `window`.
struct CenterSamples {
  std::vector<Point2> centers;
  double max_gap = 0.0;
};

CenterSamples sample_centers(const Trajectory& t, const Polygon& p, double step, const Grid& window,
                             const std::vector<Point2>& extra = {});

bool oracle_unsafe(const Trajectory& t, const Polygon& p, Point2 q, const OracleConfig& cfg);

// Grid mask (row-major, iy * nx + ix) of points covered by some sampled placement.
std::vector<std::uint8_t> oracle_mask(const Trajectory& t, const Polygon& p, const OracleConfig& cfg,
                                      CenterSamples* samples_out = nullptr);

struct BoundaryViolation {
  Point2 q;
  double distance;  // lower bound on the distance to the formula boundary
};

struct ValidationReport {
  std::size_t checked = 0;
  std::size_t oracle_unsafe = 0;
  std::size_t formula_unsafe = 0;
  std::size_t soundness_violations = 0;
  std::size_t completeness_within_margin = 0;
  std::size_t completeness_violations = 0;
  std::size_t placements = 0;
  double margin = 0.0;
  double max_sample_gap = 0.0;
  std::vector<Point2> soundness_points;
  std::vector<BoundaryViolation> completeness_points;

  bool pass() const { return soundness_violations == 0 && completeness_violations == 0; }
  std::string summary() const;
  std::string to_json() const;
};

ValidationReport validate(const Formula& f, const Trajectory& t, const Polygon& p, const OracleConfig& cfg);

}  // namespace swept
