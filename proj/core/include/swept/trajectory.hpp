#pragma once

#include "swept/expr.hpp"
#include "swept/geometry.hpp"

#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace swept {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double t) const { return t >= lo && t <= hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }
};

class TrajectoryError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Orientation { YofX, XofY };

// One C1 piece: y = f(x) or x = f(y) on a parameter interval.
class Piece {
public:
  Piece(Orientation orientation, Expr f, Interval domain);

  Orientation orientation() const { return orientation_; }
  const Expr& f() const { return f_; }
  const Expr& derivative() const { return df_; }
  Interval domain() const { return domain_; }

  double value(double t) const { return eval(f_, t); }
  double slope(double t) const { return eval(df_, t); }
  // Center position in the x/y plane for parameter t.
  Point2 point(double t) const;
  // Direction of travel (increasing parameter) in the x/y plane.
  Point2 tangent(double t) const;

  // The same curve written in the axis-swapped frame.
  Piece swapped() const;
  Piece translated(double dx, double dy) const;
  Piece mirrored_x() const;

private:
  Orientation orientation_;
  Expr f_;
  Expr df_;
  Interval domain_;
};

class Trajectory {
public:
  // Pieces are validated, ordered by their subdomain within each orientation,
  // and checked for overlaps; `declared` additionally demands full coverage.
  static Trajectory make(std::vector<Piece> pieces, std::optional<Interval> declared = std::nullopt);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  const Piece& piece(std::size_t k) const { return pieces_.at(k); }
  bool uniform_y_of_x() const;
  Interval domain() const;

  // Value of the owning y = f(x) piece; at a shared boundary the left piece wins.
  double eval(double x) const;
  // Left and right limits at x (either may be absent at the ends of the domain).
  std::pair<std::optional<double>, std::optional<double>> eval_sides(double x) const;

  Trajectory translated(double dx, double dy) const;
  Trajectory mirrored_x() const;

private:
  std::vector<Piece> pieces_;
};

// f held constant outside [lo, hi]; an infinite end means no clamp on that side.
class ClampedPiece {
public:
  ClampedPiece(const Piece& base, Interval clamp);

  const Piece& base() const { return base_; }
  Interval interval() const { return clamp_; }
  double operator()(double t) const;
  // f(clamp(arg, lo, hi)) as an expression.
  Expr apply(const Expr& arg) const;

private:
  Piece base_;
  Interval clamp_;
};

ClampedPiece clamp(const Piece& p, Interval interval);

}  // namespace swept
