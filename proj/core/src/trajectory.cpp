#include "swept/trajectory.hpp"

#include "swept/sampling.hpp"

#include <algorithm>
#include <sstream>

namespace swept {

namespace {

std::string where(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

void check_piece(const Expr& f, const Expr& df, Interval d) {
  if (std::isnan(d.lo) || std::isnan(d.hi) || !(d.lo < d.hi))
    throw TrajectoryError("piece subdomain must satisfy lo < hi");
  if (f.depends_on(Var::Y)) throw TrajectoryError("piece function must use a single variable");
  constexpr int kSamples = 256;
  for (int k = 0; k <= kSamples; ++k) {
    const double s = static_cast<double>(k) / kSamples;
    const double t = domain_point(d, s);
    if (!std::isfinite(t)) continue;
    double v = 0.0;
    try {
      v = eval(f, t);
    } catch (const EvalError& e) {
      throw TrajectoryError("f is undefined at " + where(t) + ": " + e.what());
    }
    if (!std::isfinite(v)) throw TrajectoryError("f is not finite at " + where(t));
    if (k == 0 || k == kSamples) continue;
    double dv = 0.0;
    try {
      dv = eval(df, t);
    } catch (const EvalError& e) {
      throw TrajectoryError("f' is undefined at " + where(t) + ": " + e.what());
    }
    if (!std::isfinite(dv)) throw TrajectoryError("f' is not finite at " + where(t));
  }
}

}  // namespace

Piece::Piece(Orientation orientation, Expr f, Interval domain)
    : orientation_(orientation), f_(std::move(f)), df_(differentiate(f_)), domain_(domain) {
  check_piece(f_, df_, domain_);
}

Point2 Piece::point(double t) const {
  const double v = value(t) + 0.0;  // no negative zero in emitted placements
  return orientation_ == Orientation::YofX ? Point2{t, v} : Point2{v, t};
}

Point2 Piece::tangent(double t) const {
  const double s = slope(t);
  return orientation_ == Orientation::YofX ? Point2{1.0, s} : Point2{s, 1.0};
}

Piece Piece::swapped() const {
  return Piece(orientation_ == Orientation::YofX ? Orientation::XofY : Orientation::YofX, f_, domain_);
}

Piece Piece::translated(double dx, double dy) const {
  const double along = orientation_ == Orientation::YofX ? dx : dy;
  const double across = orientation_ == Orientation::YofX ? dy : dx;
  Expr g = substitute(f_, Var::X, Expr::x() - Expr::number(along)) + Expr::number(across);
  return Piece(orientation_, g, {domain_.lo + along, domain_.hi + along});
}

Piece Piece::mirrored_x() const {
  if (orientation_ == Orientation::YofX)
    return Piece(orientation_, substitute(f_, Var::X, -Expr::x()), {-domain_.hi, -domain_.lo});
  return Piece(orientation_, -f_, domain_);
}

// ---------------------------------------------------------------------------

Trajectory Trajectory::make(std::vector<Piece> pieces, std::optional<Interval> declared) {
  if (pieces.empty()) throw TrajectoryError("trajectory needs at least one piece");
  Trajectory t;
  t.pieces_ = std::move(pieces);
  const bool uniform = std::all_of(t.pieces_.begin(), t.pieces_.end(), [&](const Piece& p) {
    return p.orientation() == t.pieces_.front().orientation();
  });
  if (uniform) {
    std::stable_sort(t.pieces_.begin(), t.pieces_.end(),
                     [](const Piece& a, const Piece& b) { return a.domain().lo < b.domain().lo; });
  }
  for (Orientation o : {Orientation::YofX, Orientation::XofY}) {
    std::vector<Interval> spans;
    for (const auto& p : t.pieces_)
      if (p.orientation() == o) spans.push_back(p.domain());
    std::sort(spans.begin(), spans.end(), [](Interval a, Interval b) { return a.lo < b.lo; });
    for (std::size_t k = 1; k < spans.size(); ++k) {
      if (spans[k].lo < spans[k - 1].hi)
        throw TrajectoryError("overlapping subdomains [" + where(spans[k - 1].lo) + ", " +
                              where(spans[k - 1].hi) + "] and [" + where(spans[k].lo) + ", " +
                              where(spans[k].hi) + "]");
    }
  }
  if (declared) {
    if (!uniform) throw TrajectoryError("a declared domain requires pieces of a single orientation");
    const auto& ps = t.pieces_;
    if (ps.front().domain().lo > declared->lo)
      throw TrajectoryError("gap in coverage at the start of the declared domain (" + where(declared->lo) + ")");
    if (ps.back().domain().hi < declared->hi)
      throw TrajectoryError("gap in coverage at the end of the declared domain (" + where(declared->hi) + ")");
    for (std::size_t k = 1; k < ps.size(); ++k) {
      if (ps[k].domain().lo > ps[k - 1].domain().hi)
        throw TrajectoryError("gap in coverage between " + where(ps[k - 1].domain().hi) + " and " +
                              where(ps[k].domain().lo));
    }
    if (ps.front().domain().lo < declared->lo || ps.back().domain().hi > declared->hi)
      throw TrajectoryError("pieces extend beyond the declared domain");
  }
  return t;
}

bool Trajectory::uniform_y_of_x() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const Piece& p) { return p.orientation() == Orientation::YofX; });
}

Interval Trajectory::domain() const {
  Interval d{kInf, -kInf};
  for (const auto& p : pieces_) {
    d.lo = std::min(d.lo, p.domain().lo);
    d.hi = std::max(d.hi, p.domain().hi);
  }
  return d;
}

double Trajectory::eval(double x) const {
  if (!uniform_y_of_x()) throw TrajectoryError("eval needs a trajectory made of y = f(x) pieces");
  for (const auto& p : pieces_)
    if (p.domain().contains(x)) return p.value(x);
  throw TrajectoryError("x = " + where(x) + " is outside the trajectory domain");
}

std::pair<std::optional<double>, std::optional<double>> Trajectory::eval_sides(double x) const {
  if (!uniform_y_of_x()) throw TrajectoryError("eval_sides needs a trajectory made of y = f(x) pieces");
  std::optional<double> left, right;
  for (const auto& p : pieces_) {
    const Interval d = p.domain();
    if (!left && d.lo < x && x <= d.hi) left = p.value(x);
    if (!right && d.lo <= x && x < d.hi) right = p.value(x);
  }
  if (!left && !right) throw TrajectoryError("x = " + where(x) + " is outside the trajectory domain");
  return {left, right};
}

Trajectory Trajectory::translated(double dx, double dy) const {
  std::vector<Piece> ps;
  for (const auto& p : pieces_) ps.push_back(p.translated(dx, dy));
  return make(std::move(ps));
}

Trajectory Trajectory::mirrored_x() const {
  std::vector<Piece> ps;
  for (const auto& p : pieces_) ps.push_back(p.mirrored_x());
  return make(std::move(ps));
}

// ---------------------------------------------------------------------------

ClampedPiece::ClampedPiece(const Piece& base, Interval interval) : base_(base), clamp_(interval) {
  const Interval d = base.domain();
  double scale = 1.0;
  if (std::isfinite(d.lo)) scale = std::max(scale, std::abs(d.lo));
  if (std::isfinite(d.hi)) scale = std::max(scale, std::abs(d.hi));
  const double slack = 1e-12 * scale;
  if (!(interval.lo <= interval.hi) || interval.lo < d.lo - slack || interval.hi > d.hi + slack)
    throw TrajectoryError("clamp interval [" + where(interval.lo) + ", " + where(interval.hi) +
                          "] is outside the piece subdomain [" + where(d.lo) + ", " + where(d.hi) + "]");
}

double ClampedPiece::operator()(double t) const {
  return base_.value(std::clamp(t, clamp_.lo, clamp_.hi));
}

Expr ClampedPiece::apply(const Expr& arg) const {
  if (!std::isfinite(clamp_.lo) && !std::isfinite(clamp_.hi)) return substitute(base_.f(), Var::X, arg);
  return substitute(base_.f(), Var::X, swept::clamp(arg, clamp_.lo, clamp_.hi));
}

ClampedPiece clamp(const Piece& p, Interval interval) { return ClampedPiece(p, interval); }

}  // namespace swept
