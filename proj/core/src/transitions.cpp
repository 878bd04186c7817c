#include "swept/transitions.hpp"

#include "swept/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace swept {

const char* to_string(TransitionKind k) {
  switch (k) {
    case TransitionKind::SlopeTransition: return "slope-transition";
    case TransitionKind::PiecewiseBoundary: return "piecewise-boundary";
    case TransitionKind::DomainEndpoint: return "domain-endpoint";
  }
  return "?";
}

namespace {

// h(t) = cross(d, tangent(t)) for one side direction d; zero when the
// tangent is parallel to the side. The arctan-free form avoids any branch cut.
class SideFunction {
public:
  SideFunction(const Piece& piece, Point2 d) : piece_(piece), d_(d) {
    if (is_rational_function(piece.derivative())) {
      dx_ = Rational(d.x);
      dy_ = Rational(d.y);
    }
  }

  // Normalised value in [-1, 1]; nullopt where f' cannot be evaluated.
  std::optional<double> value(double t) const {
    double s = 0.0;
    try {
      s = piece_.slope(t);
    } catch (const EvalError&) {
      return std::nullopt;
    }
    if (std::isnan(s)) return std::nullopt;
    Point2 tan = piece_.orientation() == Orientation::YofX ? Point2{1.0, s} : Point2{s, 1.0};
    if (std::isinf(s)) tan = piece_.orientation() == Orientation::YofX ? Point2{0.0, s > 0 ? 1.0 : -1.0}
                                                                       : Point2{s > 0 ? 1.0 : -1.0, 0.0};
    return cross(d_, tan) / (norm(d_) * norm(tan));
  }

  // Sign of h. Near zero it is recomputed exactly when f' is a rational function.
  std::optional<int> sign(double t) const {
    auto v = value(t);
    if (v && std::abs(*v) > 1e-9) return *v > 0.0 ? 1 : -1;
    if (dx_) {
      try {
        if (auto s = eval_exact(piece_.derivative(), Rational(t))) {
          const Rational h = piece_.orientation() == Orientation::YofX ? Rational(*dx_ * *s - *dy_)
                                                                        : Rational(*dx_ - *dy_ * *s);
          return h > 0 ? 1 : (h < 0 ? -1 : 0);
        }
      } catch (const EvalError&) {
        return std::nullopt;
      }
    }
    if (!v) return std::nullopt;
    return *v > 0.0 ? 1 : (*v < 0.0 ? -1 : 0);
  }

private:
  const Piece& piece_;
  Point2 d_;
  std::optional<Rational> dx_, dy_;
};

double nudge(double t, double toward) {
  const double step = 1e-10 * std::max(1.0, std::abs(t));
  return toward > t ? t + step : t - step;
}

double bisect(const SideFunction& h, double lo, double hi, int sign_lo, const TransitionOptions& opts) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= opts.bisect_rel_tol * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) return mid;
    auto s = h.sign(mid);
    if (!s) {
      std::ostringstream os;
      os << "cannot evaluate f' inside bracket [" << lo << ", " << hi << "]";
      throw RootFindingError(os.str(), lo, hi);
    }
    if (*s == 0) return mid;
    if (*s == sign_lo) lo = mid;
    else hi = mid;
  }
  std::ostringstream os;
  os << "bisection did not converge on bracket [" << lo << ", " << hi << "]";
  throw RootFindingError(os.str(), lo, hi);
}

// Golden-section search for a grazing contact: |h| dips to zero without a sign change.
std::optional<double> tangency(const SideFunction& h, double a, double b) {
  constexpr double kPhi = 0.6180339887498949;
  auto mag = [&](double t) {
    auto v = h.value(t);
    return v ? std::abs(*v) : 1.0;
  };
  double c = b - kPhi * (b - a), d = a + kPhi * (b - a);
  double fc = mag(c), fd = mag(d);
  for (int iter = 0; iter < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kPhi * (b - a);
      fc = mag(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kPhi * (b - a);
      fd = mag(d);
    }
  }
  const double t = 0.5 * (a + b);
  if (mag(t) <= 1e-10) return t;
  return std::nullopt;
}

std::vector<Point2> distinct_side_directions(const Polygon& p) {
  std::vector<Point2> dirs;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Point2 d = p.side(k);
    const bool seen = std::any_of(dirs.begin(), dirs.end(), [&](Point2 e) { return turn_sign(d, e) == 0; });
    if (!seen) dirs.push_back(d);
  }
  return dirs;
}

bool close(double a, double b, double eps) { return std::abs(a - b) <= eps * std::max(1.0, std::abs(a)); }

}  // namespace

std::vector<double> slope_roots(const Piece& piece, const Polygon& p, const TransitionOptions& opts) {
  const Interval dom = piece.domain();
  std::vector<double> roots;
  const int n = std::max(opts.scan_samples, 16);

  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    double t = domain_point(dom, static_cast<double>(k) / n);
    if (k == 0) {
      if (!std::isfinite(t)) continue;
      t = nudge(t, dom.hi);
    } else if (k == n) {
      if (!std::isfinite(t)) continue;
      t = nudge(t, dom.lo);
    }
    if (!ts.empty() && t <= ts.back()) continue;
    ts.push_back(t);
  }

  for (Point2 d : distinct_side_directions(p)) {
    SideFunction h(piece, d);
    std::vector<std::optional<int>> sg(ts.size());
    std::vector<double> mag(ts.size(), 1.0);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      sg[k] = h.sign(ts[k]);
      if (auto v = h.value(ts[k])) mag[k] = std::abs(*v);
    }
    // An identically parallel piece (a straight line along a side) has no isolated roots.
    const bool all_zero = std::all_of(sg.begin(), sg.end(), [](const auto& s) { return s && *s == 0; });
    if (all_zero) continue;

    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (!sg[k]) continue;
      if (*sg[k] == 0) {
        roots.push_back(ts[k]);
        continue;
      }
      if (k + 1 < ts.size() && sg[k + 1] && *sg[k + 1] != 0 && *sg[k + 1] != *sg[k]) {
        const double r = bisect(h, ts[k], ts[k + 1], *sg[k], opts);
        auto v = h.value(r);
        // A sign flip across a pole of f' is not a parallel tangent.
        if (v && std::abs(*v) <= 1e-6) roots.push_back(r);
      }
      if (k > 0 && k + 1 < ts.size() && sg[k - 1] && sg[k + 1] && *sg[k - 1] == *sg[k] &&
          *sg[k + 1] == *sg[k] && mag[k] <= mag[k - 1] && mag[k] <= mag[k + 1] && mag[k] < 1e-3) {
        if (auto r = tangency(h, ts[k - 1], ts[k + 1])) roots.push_back(*r);
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (!(r > dom.lo && r < dom.hi)) continue;
    if (!merged.empty() && close(merged.back(), r, opts.merge_eps)) continue;
    merged.push_back(r);
  }
  return merged;
}

std::vector<TransitionPoint> find_transitions(const Trajectory& t, const Polygon& p,
                                              const TransitionOptions& opts) {
  const auto& pieces = t.pieces();
  auto shared_end = [&](std::size_t k, double param) {
    for (std::size_t m = 0; m < pieces.size(); ++m) {
      if (m == k || pieces[m].orientation() != pieces[k].orientation()) continue;
      const Interval d = pieces[m].domain();
      if (d.lo == param || d.hi == param) return true;
    }
    return false;
  };
  auto endpoint = [&](std::size_t k, double param) {
    TransitionPoint tp;
    tp.piece = k;
    tp.param = param;
    if (std::isfinite(param)) {
      tp.at = pieces[k].point(param);
      tp.kind = shared_end(k, param) ? TransitionKind::PiecewiseBoundary : TransitionKind::DomainEndpoint;
    } else {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      tp.at = pieces[k].orientation() == Orientation::YofX ? Point2{param, nan} : Point2{nan, param};
      tp.kind = TransitionKind::DomainEndpoint;
    }
    return tp;
  };

  std::vector<TransitionPoint> out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Piece& piece = pieces[k];
    const Interval dom = piece.domain();

    TransitionPoint first = endpoint(k, dom.lo);
    const bool duplicate = !out.empty() && out.back().finite() && first.finite() &&
                           norm(out.back().at - first.at) <= 1e-12 * std::max(1.0, norm(first.at));
    if (duplicate) {
      out.back().kind = TransitionKind::PiecewiseBoundary;
    } else {
      out.push_back(first);
    }

    for (double r : slope_roots(piece, p, opts)) {
      if (std::isfinite(dom.lo) && close(r, dom.lo, opts.merge_eps)) continue;
      if (std::isfinite(dom.hi) && close(r, dom.hi, opts.merge_eps)) continue;
      TransitionPoint tp;
      tp.piece = k;
      tp.param = r;
      tp.at = piece.point(r);
      tp.kind = TransitionKind::SlopeTransition;
      out.push_back(tp);
    }
    out.push_back(endpoint(k, dom.hi));
  }
  return out;
}

// ---------------------------------------------------------------------------

Polygon working_polygon(const Polygon& p, Frame frame) {
  return frame == Frame::Identity ? p : p.reflected_xy();
}

std::size_t working_index(std::size_t original, std::size_t n, Frame frame) {
  return frame == Frame::Identity ? original : (n - original) % n;
}

std::vector<Segment> build_segments(const Trajectory& t, const Polygon& p,
                                    const std::vector<TransitionPoint>& transitions) {
  std::vector<Segment> out;
  const Polygon reflected = p.reflected_xy();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Piece& piece = t.piece(k);
    const Frame frame = piece.orientation() == Orientation::YofX ? Frame::Identity : Frame::Swapped;
    const Piece work = frame == Frame::Identity ? piece : piece.swapped();
    const Polygon& poly = frame == Frame::Identity ? p : reflected;

    std::vector<double> cuts{piece.domain().lo, piece.domain().hi};
    for (const auto& tp : transitions)
      if (tp.piece == k && tp.kind == TransitionKind::SlopeTransition) cuts.push_back(tp.param);
    std::sort(cuts.begin(), cuts.end());

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const Interval span{cuts[c], cuts[c + 1]};
      if (!(span.hi > span.lo)) continue;
      double mid = 0.0;
      if (span.finite()) mid = 0.5 * (span.lo + span.hi);
      else if (std::isfinite(span.lo)) mid = span.lo + std::max(1.0, std::abs(span.lo));
      else if (std::isfinite(span.hi)) mid = span.hi - std::max(1.0, std::abs(span.hi));
      const ActivePair w = active_pair(poly, work.tangent(mid));
      ActivePair pair{working_index(w.i, p.size(), frame), working_index(w.j, p.size(), frame), 0.0, 0.0};
      for (const auto& row : activity_table(p)) {
        if ((row.i == pair.i && row.j == pair.j) || (row.i == pair.j && row.j == pair.i)) {
          pair.lo_deg = row.lo_deg;
          pair.hi_deg = row.hi_deg;
        }
      }
      out.push_back(Segment{k, span, pair, ClampedPiece(work, span), frame});
    }
  }
  return out;
}

}  // namespace swept
