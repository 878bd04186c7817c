#pragma once

#include "swept/expr.hpp"
#include "swept/geometry.hpp"
#include "swept/trajectory.hpp"
#include "swept/transitions.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swept {

enum class Cmp { Le, Lt, Ge, Gt };

const char* to_string(Cmp c);

// Atoms compare an expression in (x, y) against zero.
struct Atom {
  Expr lhs;
  Cmp cmp = Cmp::Le;
};

// Provenance of a top-level clause; carried through serialization.
struct ClauseInfo {
  enum class Kind { None, Segment, Notch } kind = Kind::None;
  std::size_t piece = 0;
  std::size_t i = 0, j = 0;
  Interval span;
  Point2 placement;
};

class Formula {
public:
  enum class Kind { Atom, And, Or };

  static Formula atom(Expr lhs, Cmp cmp);
  static Formula all_of(std::vector<Formula> parts);
  static Formula any_of(std::vector<Formula> parts);

  Kind kind() const { return kind_; }
  const Atom& atom() const { return atom_; }
  const std::vector<Formula>& children() const { return kids_; }
  std::vector<Formula>& children() { return kids_; }
  const ClauseInfo& info() const { return info_; }
  void set_info(const ClauseInfo& info) { info_ = info; }

  std::size_t atom_count() const;

  friend bool operator==(const Formula& a, const Formula& b);

private:
  Kind kind_ = Kind::Or;
  Atom atom_;
  std::vector<Formula> kids_;
  ClauseInfo info_;
};

using RegionFormula = Formula;

// Absolute slack applied to atom comparisons, so that boundary points and
// points on shared placements are counted unsafe despite rounding.
inline constexpr double kAtomSlack = 1e-9;

bool holds(const Atom& a, Point2 q, double slack = kAtomSlack);
bool evaluate(const Formula& f, Point2 q, double slack = kAtomSlack);
// Smallest |lhs| over all atoms at q, scaled by the atom's local gradient
// estimate; used to spot points that sit on the formula boundary.
double boundary_distance_estimate(const Formula& f, Point2 q);

// Building blocks of a segment clause. All take the original polygon; the
// segment records its own frame.
Formula corner_product_atom(const Segment& seg, const Polygon& p);
Formula segment_guards(const Segment& seg, const Polygon& p);
Formula segment_clause(const Segment& seg, const Polygon& p);
Formula notch_clause(const Polygon& p, Point2 placement);

enum class LinearSegments { Corners, Hull };

struct CompileOptions {
  TransitionOptions transitions;
  // Hull emits straight segments as the half-planes of their swept convex set.
  LinearSegments linear = LinearSegments::Corners;
};

struct CompiledRegion {
  Formula formula;
  std::vector<TransitionPoint> transitions;
  std::vector<Segment> segments;
  std::vector<Point2> notches;
};

CompiledRegion compile_region(const Trajectory& t, const Polygon& p, const CompileOptions& opts = {});
Formula compile(const Trajectory& t, const Polygon& p, const CompileOptions& opts = {});

Formula unite(std::span<const Formula> parts);

enum class Format { Json, Latex, Cas };

std::string serialize(const Formula& f, Format format);
Formula parse_region_json(const std::string& text);

// Rewrites every clamp(u, lo, hi) into guarded cases; the result is piecewise-free.
Formula expand_clamps(const Formula& f);

// Count of top-level clauses of each kind.
std::size_t count_clauses(const Formula& f, ClauseInfo::Kind kind);

// Drops the top-level clause at `index` (mutation testing hook).
Formula without_clause(const Formula& f, std::size_t index);

}  // namespace swept
