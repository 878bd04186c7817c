#pragma once

#include "swept/geometry.hpp"
#include "swept/trajectory.hpp"

#include <stdexcept>
#include <vector>

namespace swept {

enum class TransitionKind { SlopeTransition, PiecewiseBoundary, DomainEndpoint };

const char* to_string(TransitionKind k);

struct TransitionPoint {
  Point2 at;             // placement of the polygon center; non-finite for an end sentinel
  TransitionKind kind = TransitionKind::SlopeTransition;
  std::size_t piece = 0;  // owning piece index
  double param = 0.0;     // x for y = f(x) pieces, y for x = f(y) pieces

  bool finite() const { return std::isfinite(at.x) && std::isfinite(at.y); }
};

struct TransitionOptions {
  int scan_samples = 4096;
  double bisect_rel_tol = 1e-13;
  double merge_eps = 1e-9;
};

class RootFindingError : public std::runtime_error {
public:
  RootFindingError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double bracket_lo() const { return lo_; }
  double bracket_hi() const { return hi_; }

private:
  double lo_, hi_;
};

// Parameters in the open subdomain of a y = f(x) piece where the tangent is
// parallel to a side of the polygon (including vertical tangents).
std::vector<double> slope_roots(const Piece& piece, const Polygon& p, const TransitionOptions& opts = {});

std::vector<TransitionPoint> find_transitions(const Trajectory& t, const Polygon& p,
                                              const TransitionOptions& opts = {});

enum class Frame { Identity, Swapped };

struct Segment {
  std::size_t piece = 0;
  Interval span;        // parameter interval inside the piece
  ActivePair pair;      // vertex indices of the original polygon
  ClampedPiece g;       // in the working frame (y = f(x) after any axis swap)
  Frame frame = Frame::Identity;
};

std::vector<Segment> build_segments(const Trajectory& t, const Polygon& p,
                                    const std::vector<TransitionPoint>& transitions);

// The polygon and pair expressed in the working frame of a segment.
Polygon working_polygon(const Polygon& p, Frame frame);
std::size_t working_index(std::size_t original, std::size_t n, Frame frame);

}  // namespace swept
