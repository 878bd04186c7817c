#include "swept/region.hpp"

#include <algorithm>
#include <cmath>

namespace swept {

const char* to_string(Cmp c) {
  switch (c) {
    case Cmp::Le: return "<=0";
    case Cmp::Lt: return "<0";
    case Cmp::Ge: return ">=0";
    case Cmp::Gt: return ">0";
  }
  return "?";
}

Formula Formula::atom(Expr lhs, Cmp cmp) {
  Formula f;
  f.kind_ = Kind::Atom;
  f.atom_ = Atom{std::move(lhs), cmp};
  return f;
}

Formula Formula::all_of(std::vector<Formula> parts) {
  Formula f;
  f.kind_ = Kind::And;
  f.kids_ = std::move(parts);
  return f;
}

Formula Formula::any_of(std::vector<Formula> parts) {
  Formula f;
  f.kind_ = Kind::Or;
  f.kids_ = std::move(parts);
  return f;
}

std::size_t Formula::atom_count() const {
  if (kind_ == Kind::Atom) return 1;
  std::size_t n = 0;
  for (const auto& k : kids_) n += k.atom_count();
  return n;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Formula::Kind::Atom) return a.atom_.cmp == b.atom_.cmp && a.atom_.lhs == b.atom_.lhs;
  if (a.kids_.size() != b.kids_.size()) return false;
  for (std::size_t k = 0; k < a.kids_.size(); ++k)
    if (!(a.kids_[k] == b.kids_[k])) return false;
  return true;
}

bool holds(const Atom& a, Point2 q, double slack) {
  const double v = eval(a.lhs, q.x, q.y);
  switch (a.cmp) {
    case Cmp::Le: return v <= slack;
    case Cmp::Lt: return v < slack;
    case Cmp::Ge: return v >= -slack;
    case Cmp::Gt: return v > -slack;
  }
  return false;
}

bool evaluate(const Formula& f, Point2 q, double slack) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return holds(f.atom(), q, slack);
    case Formula::Kind::And:
      for (const auto& k : f.children())
        if (!evaluate(k, q, slack)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& k : f.children())
        if (evaluate(k, q, slack)) return true;
      return false;
  }
  return false;
}

double boundary_distance_estimate(const Formula& f, Point2 q) {
  if (f.kind() == Formula::Kind::Atom) {
    const Expr& e = f.atom().lhs;
    const double h = 1e-7 * std::max(1.0, std::max(std::abs(q.x), std::abs(q.y)));
    try {
      const double v = eval(e, q.x, q.y);
      const double gx = (eval(e, q.x + h, q.y) - eval(e, q.x - h, q.y)) / (2 * h);
      const double gy = (eval(e, q.x, q.y + h) - eval(e, q.x, q.y - h)) / (2 * h);
      const double g = std::hypot(gx, gy);
      if (g == 0.0) return v == 0.0 ? 0.0 : kInf;
      return std::abs(v) / g;
    } catch (const EvalError&) {
      return kInf;
    }
  }
  double best = kInf;
  for (const auto& k : f.children()) best = std::min(best, boundary_distance_estimate(k, q));
  return best;
}

// ---------------------------------------------------------------------------
// Clause construction

namespace {

Expr num(double v) { return Expr::number(v); }

// alpha*X + beta*Y + gamma, scaled so that the leading variable has unit
// coefficient: "y - (m*x + c)" or "x - c". `flipped` reports a negative scale.
Expr unit_line(double alpha, double beta, double gamma, bool& flipped) {
  const double scale = std::max(std::abs(alpha), std::abs(beta));
  if (std::abs(beta) > 1e-12 * scale) {
    flipped = beta < 0.0;
    const double m = -alpha / beta;
    const double c = -gamma / beta;
    return Expr::y() - (num(m) * Expr::x() + num(c));
  }
  flipped = alpha < 0.0;
  return Expr::x() - num(-gamma / alpha);
}

Cmp flip(Cmp c) {
  switch (c) {
    case Cmp::Le: return Cmp::Ge;
    case Cmp::Lt: return Cmp::Gt;
    case Cmp::Ge: return Cmp::Le;
    case Cmp::Gt: return Cmp::Lt;
  }
  return c;
}

// Half-plane cross(dir, q - through) >= 0, i.e. q on the left of the directed line.
Formula left_of(Point2 dir, Point2 through) {
  bool flipped = false;
  const double alpha = -dir.y;
  const double beta = dir.x;
  const double gamma = dir.y * through.x - dir.x * through.y;
  Expr lhs = unit_line(alpha, beta, gamma, flipped);
  return Formula::atom(lhs, flipped ? Cmp::Le : Cmp::Ge);
}

Formula to_original(Formula f, Frame frame) {
  if (frame == Frame::Identity) return f;
  if (f.kind() == Formula::Kind::Atom) {
    Formula g = Formula::atom(swap_variables(f.atom().lhs), f.atom().cmp);
    g.set_info(f.info());
    return g;
  }
  for (auto& k : f.children()) k = to_original(k, frame);
  return f;
}

struct Working {
  Polygon poly;
  Point2 a;  // offset of the pair's first vertex in the working frame
  Point2 b;
};

Working working(const Segment& seg, const Polygon& p) {
  Polygon w = working_polygon(p, seg.frame);
  const Point2 a = w.vertex(working_index(seg.pair.i, p.size(), seg.frame));
  const Point2 b = w.vertex(working_index(seg.pair.j, p.size(), seg.frame));
  return {std::move(w), a, b};
}

Point2 center_at(const Segment& seg, double t) { return {t, seg.g(t)}; }

double interior_param(Interval span) {
  if (span.finite()) return 0.5 * (span.lo + span.hi);
  if (std::isfinite(span.lo)) return span.lo + std::max(1.0, std::abs(span.lo));
  if (std::isfinite(span.hi)) return span.hi - std::max(1.0, std::abs(span.hi));
  return 0.0;
}

ClauseInfo segment_info(const Segment& seg) {
  ClauseInfo info;
  info.kind = ClauseInfo::Kind::Segment;
  info.piece = seg.piece;
  info.i = seg.pair.i;
  info.j = seg.pair.j;
  info.span = seg.span;
  return info;
}

std::vector<Formula> hull_half_planes(const std::vector<Point2>& hull) {
  std::vector<Formula> atoms;
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const Point2 a = hull[k];
    const Point2 b = hull[(k + 1) % hull.size()];
    atoms.push_back(left_of(b - a, a));
  }
  return atoms;
}

// Straight piece: the swept set is convex, emitted as its supporting half-planes.
Formula linear_hull_clause(const Segment& seg, const Polygon& p) {
  const Piece& work = seg.g.base();
  const Polygon w = working_polygon(p, seg.frame);
  const Interval s = seg.span;
  std::vector<Formula> atoms;
  if (s.finite()) {
    const std::vector<Point2> ends{center_at(seg, s.lo), center_at(seg, s.hi)};
    atoms = hull_half_planes(minkowski_sum(w.vertices(), ends));
  } else {
    Point2 u = work.tangent(interior_param(s));
    u = (1.0 / norm(u)) * u;
    std::optional<Point2> origin;
    if (std::isfinite(s.lo)) origin = center_at(seg, s.lo);
    if (std::isfinite(s.hi)) {
      origin = center_at(seg, s.hi);
      u = -u;
    }
    if (!origin) origin = center_at(seg, 0.0);
    if (std::isfinite(s.lo) || std::isfinite(s.hi)) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        const Point2 e = w.side(k);
        const Point2 outward{e.y, -e.x};
        if (dot(outward, u) < -1e-12 * norm(e)) atoms.push_back(left_of(e, *origin + w.vertex(k)));
      }
    }
    // Supporting lines parallel to the direction of travel.
    std::size_t right = 0, left = 0;
    const Point2 nr{u.y, -u.x};
    for (std::size_t k = 1; k < w.size(); ++k) {
      if (dot(nr, w.vertex(k)) > dot(nr, w.vertex(right))) right = k;
      if (dot(nr, w.vertex(k)) < dot(nr, w.vertex(left))) left = k;
    }
    atoms.push_back(left_of(u, *origin + w.vertex(right)));
    atoms.push_back(left_of(-u, *origin + w.vertex(left)));
  }
  Formula f = to_original(Formula::all_of(std::move(atoms)), seg.frame);
  f.set_info(segment_info(seg));
  return f;
}

bool is_affine(const Piece& piece) { return !piece.derivative().depends_on(Var::X); }

}  // namespace

namespace {

// Trace of the corner at offset c. Past the segment ends it continues along the
// end chord line (slope of a - b) rather than horizontally, so both traces
// leave the band on its boundary.
Expr corner_trace(const Segment& seg, Point2 c, double chord_slope) {
  const Expr u = Expr::x() - num(c.x);
  Expr y = seg.g.apply(u) + num(c.y);
  const Interval s = seg.g.interval();
  if (chord_slope != 0.0 && (std::isfinite(s.lo) || std::isfinite(s.hi)))
    y = y + num(chord_slope) * (u - clamp(u, s.lo, s.hi));
  return y;
}

}  // namespace

Formula corner_product_atom(const Segment& seg, const Polygon& p) {
  const Working w = working(seg, p);
  const Point2 d = w.a - w.b;
  const double scale = std::max({1.0, norm(w.a), norm(w.b)});
  const double slope = std::abs(d.x) > 1e-12 * scale ? d.y / d.x : 0.0;
  const Expr Y = Expr::y();
  const Expr fi = Y - corner_trace(seg, w.a, slope);
  const Expr fj = Y - corner_trace(seg, w.b, slope);
  return to_original(Formula::atom(fi * fj, Cmp::Le), seg.frame);
}

Formula segment_guards(const Segment& seg, const Polygon& p) {
  const Working w = working(seg, p);
  const Interval s = seg.span;
  std::vector<Formula> atoms;
  if (std::isfinite(s.lo)) atoms.push_back(Formula::atom(Expr::x() - num(s.lo + std::min(w.a.x, w.b.x)), Cmp::Ge));
  if (std::isfinite(s.hi)) atoms.push_back(Formula::atom(Expr::x() - num(s.hi + std::max(w.a.x, w.b.x)), Cmp::Le));

  const Point2 d = w.a - w.b;
  const double scale = std::max({1.0, norm(w.a), norm(w.b)});
  if (norm(d) > 1e-12 * scale && (std::isfinite(s.lo) || std::isfinite(s.hi))) {
    // Line through c + a with direction d: cross(d, q - c - a) = 0.
    auto line = [&](Point2 c, bool& flipped) {
      const Point2 through = c + w.a;
      return unit_line(-d.y, d.x, d.y * through.x - d.x * through.y, flipped);
    };
    if (std::isfinite(s.lo) && std::isfinite(s.hi)) {
      bool f0 = false, f1 = false;
      Expr l0 = line(center_at(seg, s.lo), f0);
      Expr l1 = line(center_at(seg, s.hi), f1);
      atoms.push_back(Formula::atom(l0 * l1, f0 != f1 ? Cmp::Ge : Cmp::Le));
    } else {
      const Point2 c = center_at(seg, std::isfinite(s.lo) ? s.lo : s.hi);
      const Point2 inner = center_at(seg, interior_param(s));
      const bool positive = cross(d, inner - c) >= 0.0;
      bool flipped = false;
      Expr l = line(c, flipped);
      Cmp cmp = positive ? Cmp::Ge : Cmp::Le;
      atoms.push_back(Formula::atom(l, flipped ? flip(cmp) : cmp));
    }
  }
  return to_original(Formula::all_of(std::move(atoms)), seg.frame);
}

Formula segment_clause(const Segment& seg, const Polygon& p) {
  Formula guards = segment_guards(seg, p);
  std::vector<Formula> parts = guards.children();
  parts.push_back(corner_product_atom(seg, p));
  Formula f = Formula::all_of(std::move(parts));
  f.set_info(segment_info(seg));
  return f;
}

Formula notch_clause(const Polygon& p, Point2 placement) {
  std::vector<Formula> atoms;
  for (std::size_t k = 0; k < p.size(); ++k) atoms.push_back(left_of(p.side(k), placement + p.vertex(k)));
  Formula f = Formula::all_of(std::move(atoms));
  ClauseInfo info;
  info.kind = ClauseInfo::Kind::Notch;
  info.placement = placement;
  f.set_info(info);
  return f;
}

CompiledRegion compile_region(const Trajectory& t, const Polygon& p, const CompileOptions& opts) {
  CompiledRegion out;
  out.transitions = find_transitions(t, p, opts.transitions);
  out.segments = build_segments(t, p, out.transitions);

  std::vector<Formula> clauses;
  for (const auto& seg : out.segments) {
    if (opts.linear == LinearSegments::Hull && is_affine(seg.g.base()))
      clauses.push_back(linear_hull_clause(seg, p));
    else
      clauses.push_back(segment_clause(seg, p));
  }
  for (const auto& tp : out.transitions) {
    if (!tp.finite()) continue;
    const bool seen = std::any_of(out.notches.begin(), out.notches.end(), [&](Point2 q) {
      return norm(q - tp.at) <= 1e-12 * std::max(1.0, norm(q));
    });
    if (seen) continue;
    out.notches.push_back(tp.at);
    clauses.push_back(notch_clause(p, tp.at));
  }
  out.formula = Formula::any_of(std::move(clauses));
  return out;
}

Formula compile(const Trajectory& t, const Polygon& p, const CompileOptions& opts) {
  return compile_region(t, p, opts).formula;
}

Formula unite(std::span<const Formula> parts) {
  std::vector<Formula> clauses;
  for (const auto& f : parts) {
    if (f.kind() == Formula::Kind::Or)
      clauses.insert(clauses.end(), f.children().begin(), f.children().end());
    else
      clauses.push_back(f);
  }
  return Formula::any_of(std::move(clauses));
}

std::size_t count_clauses(const Formula& f, ClauseInfo::Kind kind) {
  if (f.kind() != Formula::Kind::Or) return f.info().kind == kind ? 1 : 0;
  return static_cast<std::size_t>(std::count_if(f.children().begin(), f.children().end(),
                                                [&](const Formula& c) { return c.info().kind == kind; }));
}

Formula without_clause(const Formula& f, std::size_t index) {
  Formula g = f;
  if (g.kind() == Formula::Kind::Or && index < g.children().size())
    g.children().erase(g.children().begin() + static_cast<std::ptrdiff_t>(index));
  return g;
}

// ---------------------------------------------------------------------------

namespace {

void collect_clamps(const Expr& e, std::vector<Expr>& out) {
  if (e.op() == Expr::Op::Clamp) {
    if (std::none_of(out.begin(), out.end(), [&](const Expr& c) { return c == e; })) out.push_back(e);
    return;
  }
  for (std::size_t k = 0; k < e.arity(); ++k) collect_clamps(e.operand(k), out);
}

Expr replace(const Expr& e, const Expr& target, const Expr& with) {
  if (e == target) return with;
  switch (e.op()) {
    case Expr::Op::Const:
    case Expr::Op::Var: return e;
    case Expr::Op::Neg: return -replace(e.operand(0), target, with);
    case Expr::Op::Add: return replace(e.operand(0), target, with) + replace(e.operand(1), target, with);
    case Expr::Op::Sub: return replace(e.operand(0), target, with) - replace(e.operand(1), target, with);
    case Expr::Op::Mul: return replace(e.operand(0), target, with) * replace(e.operand(1), target, with);
    case Expr::Op::Div: return replace(e.operand(0), target, with) / replace(e.operand(1), target, with);
    case Expr::Op::Pow: return pow(replace(e.operand(0), target, with), e.exponent());
    case Expr::Op::Sqrt: return sqrt(replace(e.operand(0), target, with));
    case Expr::Op::Clamp: return clamp(replace(e.operand(0), target, with), e.clamp_lo(), e.clamp_hi());
  }
  return e;
}

void expand_atom(const Atom& a, std::vector<Expr>& clamps, std::size_t k, const Expr& lhs,
                 std::vector<Formula>& guards, std::vector<Formula>& out) {
  if (k == clamps.size()) {
    std::vector<Formula> parts = guards;
    parts.push_back(Formula::atom(lhs, a.cmp));
    out.push_back(parts.size() == 1 ? parts.front() : Formula::all_of(std::move(parts)));
    return;
  }
  const Expr& c = clamps[k];
  const Expr u = c.operand(0);
  const double lo = c.clamp_lo();
  const double hi = c.clamp_hi();
  if (std::isfinite(lo)) {
    guards.push_back(Formula::atom(u - num(lo), Cmp::Le));
    expand_atom(a, clamps, k + 1, replace(lhs, c, num(lo)), guards, out);
    guards.pop_back();
  }
  std::size_t pushed = 0;
  if (std::isfinite(lo)) {
    guards.push_back(Formula::atom(u - num(lo), Cmp::Ge));
    ++pushed;
  }
  if (std::isfinite(hi)) {
    guards.push_back(Formula::atom(u - num(hi), Cmp::Le));
    ++pushed;
  }
  expand_atom(a, clamps, k + 1, replace(lhs, c, u), guards, out);
  guards.resize(guards.size() - pushed);
  if (std::isfinite(hi)) {
    guards.push_back(Formula::atom(u - num(hi), Cmp::Ge));
    expand_atom(a, clamps, k + 1, replace(lhs, c, num(hi)), guards, out);
    guards.pop_back();
  }
}

}  // namespace

Formula expand_clamps(const Formula& f) {
  if (f.kind() == Formula::Kind::Atom) {
    std::vector<Expr> clamps;
    collect_clamps(f.atom().lhs, clamps);
    if (clamps.empty()) return f;
    std::vector<Formula> guards, cases;
    expand_atom(f.atom(), clamps, 0, f.atom().lhs, guards, cases);
    return Formula::any_of(std::move(cases));
  }
  Formula g = f;
  for (auto& k : g.children()) k = expand_clamps(k);
  return g;
}

}  // namespace swept
