#include "swept/oracle.hpp"

#include "swept/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace swept {

void Grid::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
  if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1))
    throw std::invalid_argument("grid bounds must be finite");
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("grid is empty: need x0 < x1 and y0 < y1");
}

std::size_t Grid::nx() const { return static_cast<std::size_t>(std::floor((x1 - x0) / step + 1e-9)) + 1; }
std::size_t Grid::ny() const { return static_cast<std::size_t>(std::floor((y1 - y0) / step + 1e-9)) + 1; }

namespace {

bool on_trajectory(const Trajectory& t, Point2 c) {
  for (const auto& piece : t.pieces()) {
    const bool yx = piece.orientation() == Orientation::YofX;
    const double param = yx ? c.x : c.y;
    const double other = yx ? c.y : c.x;
    if (!piece.domain().contains(param)) continue;
    try {
      const double v = piece.value(param);
      if (std::abs(v - other) <= 1e-9 * std::max(1.0, std::abs(v))) return true;
    } catch (const EvalError&) {
    }
  }
  return false;
}

// Midpoint subdivision until both the parameter width and the chord are at
// most `step`. A smaller step subdivides a superset of intervals, so the
// sample sets are nested.
void subdivide(const Piece& piece, double a, double b, double step, std::vector<Point2>& out, double& gap) {
  struct Item {
    double a, b;
    Point2 ca, cb;
    int depth;
  };
  std::vector<Item> stack{{a, b, piece.point(a), piece.point(b), 0}};
  out.push_back(stack.back().ca);
  // Depth-first, left before right, so centers come out in parameter order.
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const double chord = norm(it.cb - it.ca);
    const double mid = 0.5 * (it.a + it.b);
    if (it.depth < 64 && (it.b - it.a > step || chord > step) && mid > it.a && mid < it.b) {
      const Point2 cm = piece.point(mid);
      stack.push_back({mid, it.b, cm, it.cb, it.depth + 1});
      stack.push_back({it.a, mid, it.ca, cm, it.depth + 1});
      continue;
    }
    gap = std::max(gap, chord);
    out.push_back(it.cb);
  }
}

}  // namespace

CenterSamples sample_centers(const Trajectory& t, const Polygon& p, double step, const Grid& window,
                             const std::vector<Point2>& extra) {
  if (!(step > 0.0)) throw std::invalid_argument("trajectory sample step must be positive");
  CenterSamples s;
  for (const auto& piece : t.pieces()) {
    const bool yx = piece.orientation() == Orientation::YofX;
    const double reach = yx ? p.half_width() : p.half_height();
    const double lo = std::max(piece.domain().lo, (yx ? window.x0 : window.y0) - reach);
    const double hi = std::min(piece.domain().hi, (yx ? window.x1 : window.y1) + reach);
    if (lo > hi) continue;
    if (lo == hi) {
      s.centers.push_back(piece.point(lo));
      continue;
    }
    subdivide(piece, lo, hi, step, s.centers, s.max_gap);
  }
  for (const auto& c : extra)
    if (on_trajectory(t, c)) s.centers.push_back(c);
  return s;
}

std::vector<std::uint8_t> oracle_mask(const Trajectory& t, const Polygon& p, const OracleConfig& cfg,
                                      CenterSamples* samples_out) {
  const Grid& g = cfg.grid;
  g.validate();
  CenterSamples samples = sample_centers(t, p, cfg.trajectory_step, g, cfg.extra_placements);
  const std::size_t nx = g.nx(), ny = g.ny();
  std::vector<std::uint8_t> mask(nx * ny, 0);
  double lox = 0, hix = 0, loy = 0, hiy = 0;
  for (const auto& v : p.vertices()) {
    lox = std::min(lox, v.x);
    hix = std::max(hix, v.x);
    loy = std::min(loy, v.y);
    hiy = std::max(hiy, v.y);
  }
  auto index_range = [&](double from, double to, double origin, std::size_t count, long& i0, long& i1) {
    i0 = std::max(0L, static_cast<long>(std::ceil((from - origin) / g.step - 1e-9)));
    i1 = std::min(static_cast<long>(count) - 1, static_cast<long>(std::floor((to - origin) / g.step + 1e-9)));
  };
  parallel_for(ny, [&](std::size_t row0, std::size_t row1) {
    for (const auto& c : samples.centers) {
      long iy0, iy1, ix0, ix1;
      index_range(c.y + loy, c.y + hiy, g.y0, ny, iy0, iy1);
      iy0 = std::max(iy0, static_cast<long>(row0));
      iy1 = std::min(iy1, static_cast<long>(row1) - 1);
      if (iy0 > iy1) continue;
      index_range(c.x + lox, c.x + hix, g.x0, nx, ix0, ix1);
      for (long iy = iy0; iy <= iy1; ++iy) {
        for (long ix = ix0; ix <= ix1; ++ix) {
          std::uint8_t& m = mask[static_cast<std::size_t>(iy) * nx + static_cast<std::size_t>(ix)];
          if (!m && point_in_polygon(p, c, g.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy)))) m = 1;
        }
      }
    }
  });
  if (samples_out) *samples_out = std::move(samples);
  return mask;
}

bool oracle_unsafe(const Trajectory& t, const Polygon& p, Point2 q, const OracleConfig& cfg) {
  Grid window{q.x - 1e-9, q.x + 1e-9, q.y - 1e-9, q.y + 1e-9, 1.0};
  const CenterSamples s = sample_centers(t, p, cfg.trajectory_step, window, cfg.extra_placements);
  return std::any_of(s.centers.begin(), s.centers.end(), [&](Point2 c) { return point_in_polygon(p, c, q); });
}

namespace {

// Distance from q (inside the formula) to the nearest formula-safe point found
// within `limit`: radial probes refined by bisection. Returns +inf when no
// safe point was found, i.e. q is deeper than `limit`.
double distance_to_safe(const Formula& f, Point2 q, double limit, const Grid& g,
                        const std::vector<std::uint8_t>& formula_mask) {
  double best = kInf;
  auto refine = [&](Point2 inside, Point2 outside) {
    for (int k = 0; k < 50; ++k) {
      const Point2 mid = 0.5 * (inside + outside);
      if (evaluate(f, mid)) inside = mid;
      else outside = mid;
    }
    return norm(outside - q);
  };

  // Nearest formula-safe grid neighbours.
  const long cx = std::lround((q.x - g.x0) / g.step);
  const long cy = std::lround((q.y - g.y0) / g.step);
  const long reach = static_cast<long>(std::ceil(limit / g.step)) + 1;
  for (long dy = -reach; dy <= reach; ++dy) {
    for (long dx = -reach; dx <= reach; ++dx) {
      const long ix = cx + dx, iy = cy + dy;
      if (ix < 0 || iy < 0 || ix >= static_cast<long>(g.nx()) || iy >= static_cast<long>(g.ny())) continue;
      if (formula_mask[static_cast<std::size_t>(iy) * g.nx() + static_cast<std::size_t>(ix)]) continue;
      const Point2 n = g.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
      if (norm(n - q) > best) continue;
      best = std::min(best, refine(q, n));
    }
  }

  constexpr int kDirections = 64;
  constexpr int kRadii = 8;
  for (int d = 0; d < kDirections; ++d) {
    const double a = 2.0 * std::numbers::pi * d / kDirections;
    const Point2 u{std::cos(a), std::sin(a)};
    Point2 last = q;
    for (int r = 1; r <= kRadii; ++r) {
      const Point2 probe = q + (limit * r / kRadii) * u;
      if (!evaluate(f, probe)) {
        best = std::min(best, refine(last, probe));
        break;
      }
      last = probe;
    }
  }
  return best;
}

}  // namespace

ValidationReport validate(const Formula& f, const Trajectory& t, const Polygon& p, const OracleConfig& cfg) {
  const Grid& g = cfg.grid;
  g.validate();
  CenterSamples samples;
  const std::vector<std::uint8_t> oracle = oracle_mask(t, p, cfg, &samples);
  const std::size_t nx = g.nx(), ny = g.ny();
  std::vector<std::uint8_t> formula(nx * ny, 0);
  parallel_for(ny, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t iy = r0; iy < r1; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) formula[iy * nx + ix] = evaluate(f, g.at(ix, iy)) ? 1 : 0;
  });

  ValidationReport rep;
  rep.checked = nx * ny;
  rep.placements = samples.centers.size();
  rep.max_sample_gap = samples.max_gap;
  rep.margin = cfg.margin.value_or(2.0 * std::max(samples.max_gap, 1e-12));

  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    rep.oracle_unsafe += oracle[k];
    rep.formula_unsafe += formula[k];
    if (oracle[k] && !formula[k]) {
      ++rep.soundness_violations;
      if (rep.soundness_points.size() < cfg.max_reported) rep.soundness_points.push_back(g.at(k % nx, k / nx));
    }
    if (formula[k] && !oracle[k]) candidates.push_back(k);
  }

  std::vector<double> dist(candidates.size(), 0.0);
  parallel_for(candidates.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) {
      const std::size_t k = candidates[c];
      dist[c] = distance_to_safe(f, g.at(k % nx, k / nx), rep.margin, g, formula);
    }
  });
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (dist[c] <= rep.margin) {
      ++rep.completeness_within_margin;
    } else {
      ++rep.completeness_violations;
      if (rep.completeness_points.size() < cfg.max_reported) {
        const std::size_t k = candidates[c];
        rep.completeness_points.push_back({g.at(k % nx, k / nx), std::min(dist[c], rep.margin)});
      }
    }
  }
  return rep;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (pass() ? "PASS" : "FAIL") << ": " << checked << " grid points, " << oracle_unsafe
     << " oracle-unsafe, " << formula_unsafe << " formula-unsafe, " << soundness_violations
     << " soundness violations, " << completeness_violations << " completeness violations beyond margin "
     << margin << " (" << completeness_within_margin << " within margin), " << placements
     << " sampled placements";
  return os.str();
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass() ? "PASS" : "FAIL";
  j["checked"] = checked;
  j["oracle_unsafe"] = oracle_unsafe;
  j["formula_unsafe"] = formula_unsafe;
  j["soundness_violations"] = soundness_violations;
  j["completeness_violations"] = completeness_violations;
  j["completeness_within_margin"] = completeness_within_margin;
  j["margin"] = margin;
  j["max_sample_gap"] = max_sample_gap;
  j["placements"] = placements;
  auto pts = nlohmann::json::array();
  for (const auto& q : soundness_points) pts.push_back({q.x, q.y});
  j["soundness_points"] = pts;
  auto cps = nlohmann::json::array();
  for (const auto& v : completeness_points) cps.push_back({{"at", {v.q.x, v.q.y}}, {"distance_at_least", v.distance}});
  j["completeness_points"] = cps;
  return j.dump(2) + "\n";
}

}  // namespace swept
