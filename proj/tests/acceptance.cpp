#include "generators.hpp"
#include "job.hpp"
#include "swept/oracle.hpp"
#include "swept/region.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

using namespace swept;
using namespace swept::testing;

namespace {

using Predicate = std::function<bool(Point2)>;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("%s  %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// True when p keeps its value under every perturbation of size eps.
bool stable(const Predicate& p, Point2 q, double eps) {
  const bool at = p(q);
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      if (p({q.x + dx * eps, q.y + dy * eps}) != at) return false;
  return true;
}

struct Agreement {
  int compared = 0, skipped = 0, disagree = 0;
  Point2 first_bad;
};

Agreement agree_on_grid(const Predicate& a, const Predicate& b, const Grid& g, double eps) {
  Agreement r;
  for (std::size_t iy = 0; iy < g.ny(); ++iy) {
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
      const Point2 q = g.at(ix, iy);
      if (!stable(a, q, eps) || !stable(b, q, eps)) {
        ++r.skipped;
        continue;
      }
      ++r.compared;
      if (a(q) != b(q)) {
        if (r.disagree++ == 0) r.first_bad = q;
      }
    }
  }
  return r;
}

std::string describe(const Agreement& a) {
  std::string s = fmt("%d points agree, %d near a boundary skipped", a.compared - a.disagree, a.skipped);
  if (a.disagree) s += fmt(", %d disagree (first at %g, %g)", a.disagree, a.first_bad.x, a.first_bad.y);
  return s;
}

// Hand-written unsafe set for a 2 x 1 half-extent rectangle descending along
// y = -2x on [0, 5] and climbing along y = x - 15 afterwards.
bool two_line_by_hand(Point2 q) {
  const double x = q.x, y = q.y, w = 2, h = 1;
  const bool first = x >= -w && y <= h && y >= -2 * x - 2 * w - h && x <= 5 + w && y <= -2 * x + 2 * w + h &&
                     y >= -10 - h;
  const bool second = x >= 5 - w && y >= -10 - h && y <= x + w + h - 15 && y >= x - w - h - 15;
  return first || second;
}

// Hand-written unsafe set for the hexagon (circumradius 2) following the line
// into the circular arc of radius 10.
bool line_arc_by_hand(Point2 q) {
  const double s = std::sqrt(3.0), x = q.x, y = q.y;
  auto gA = [&](double u) { return u < -12 ? 32 * s / 3 : (u <= 5 ? -s * (u - 5) / 3 + 5 * s : 5 * s); };
  auto gB = [&](double u) { return u < 5 ? 5 * s : (u <= 5 * s ? std::sqrt(100 - u * u) : 5.0); };
  auto gC = [&](double u) { return u < 5 * s ? 5.0 : (u <= 10 ? std::sqrt(100 - u * u) : 0.0); };
  const bool a = x >= -14 && x <= 7 && (s * x - y) * (s * x - y + 68 * s / 3) <= 0 &&
                 (y - gA(x - 1) - s) * (y - gA(x + 1) + s) <= 0;
  const bool b = x >= 3 && x <= 2 + 5 * s && (s * x - y) * (s * x - y - 10) <= 0 &&
                 (y - gB(x - 1) - s) * (y - gB(x + 1) + s) <= 0;
  const bool c = x >= -2 + 5 * s && x <= 12 && y * (y - 5) <= 0 && (y - gC(x - 2)) * (y - gC(x + 2)) <= 0;
  const bool n1 = -2 * y + 2 * s >= 0 && -y - s * (x - 12) >= 0 && y + s * (x - 8) >= 0 && 2 * y + 2 * s >= 0 &&
                  -y + s * (x - 9) + s >= 0 && y - s * (x - 11) + s >= 0;
  const bool n2 = -2 * y + 12 * s >= 0 && 2 * y - 8 * s >= 0 && -y - s * (x - 7) + 5 * s >= 0 &&
                  -y + s * (x - 4) + 6 * s >= 0 && y - s * (x - 6) - 4 * s >= 0 && y + s * (x - 3) - 5 * s >= 0;
  const bool n3 = -2 * y + 70 * s / 3 >= 0 && 2 * y - 58 * s / 3 >= 0 && -y - s * (x + 10) + 32 * s / 3 >= 0 &&
                  -y + s * (x + 13) + 35 * s / 3 >= 0 && y - s * (x + 11) - 29 * s / 3 >= 0 &&
                  y + s * (x + 14) - 32 * s / 3 >= 0;
  const bool n4 = -2 * y + 2 * s + 10 >= 0 && -y - s * (x - 5 * s - 2) + 5 >= 0 && y + s * (x - 5 * s + 2) - 5 >= 0 &&
                  2 * y - 10 + 2 * s >= 0 && -y + s * (x - 5 * s + 1) + s + 5 >= 0 &&
                  y - s * (x - 5 * s - 1) - 5 + s >= 0;
  return a || b || c || n1 || n2 || n3 || n4;
}

Predicate formula_predicate(const Formula& f) {
  return [&f](Point2 q) { return evaluate(f, q); };
}

void criterion_two_line() {
  const auto t0 = Clock::now();
  const tool::Job job = tool::load_job("fig1");
  const Grid g{-5, 20, -12, 5, 0.25};
  bool ok = true;
  std::string detail;
  for (auto mode : {LinearSegments::Hull, LinearSegments::Corners}) {
    CompileOptions opts = job.compile;
    opts.linear = mode;
    const Formula f = compile(job.trajectory, job.polygon(), opts);
    const Agreement a = agree_on_grid(formula_predicate(f), two_line_by_hand, g, 1e-9);
    ok = ok && a.disagree == 0;
    detail += std::string(mode == LinearSegments::Hull ? "hull: " : "corners: ") + describe(a) + "; ";
  }
  const double secs = seconds_since(t0);
  report("1", ok && secs < 5.0, "two-line example vs hand formula: " + detail + fmt("%.2f s (limit 5 s)", secs));
}

void criterion_hexagon_table() {
  const Polygon h = Polygon::regular(6, std::cos(std::numbers::pi / 6), -std::numbers::pi / 3);
  const std::set<std::size_t> v14{0, 3}, v25{1, 4}, v36{2, 5};
  int bad = 0, first_bad = -1;
  for (int deg = 0; deg < 180; ++deg) {
    std::set<std::set<std::size_t>> expect, got;
    if (deg <= 60) expect.insert(v14);
    if (deg >= 60 && deg <= 120) expect.insert(v25);
    if (deg >= 120 || deg == 0) expect.insert(v36);
    for (const auto& p : active_corners(h, static_cast<double>(deg))) got.insert({p.i, p.j});
    if (got != expect && bad++ == 0) first_bad = deg;
  }
  std::string detail = fmt("hexagon active corners at 1 degree over [0, 180): %d of 180 angles match", 180 - bad);
  if (bad) detail += fmt(" (first mismatch at %d deg)", first_bad);
  report("2", bad == 0, detail);
}

ValidationReport run_validation(const tool::Job& job, const Formula& f) {
  OracleConfig cfg = job.oracle_config();
  cfg.trajectory_step = 1e-3;
  cfg.grid.step = 0.1;
  return validate(f, job.trajectory, job.polygon(), cfg);
}

std::string describe(const ValidationReport& r) {
  return fmt("%zu soundness, %zu completeness beyond delta=%.3g (%zu within), %zu grid points",
             r.soundness_violations, r.completeness_violations, r.margin, r.completeness_within_margin, r.checked);
}

void criterion_line_arc() {
  const tool::Job job = tool::load_job("uav");
  const auto t0 = Clock::now();
  const CompiledRegion region = compile_region(job.trajectory, job.polygon(), job.compile);
  const double secs = seconds_since(t0);

  const Agreement a = agree_on_grid(formula_predicate(region.formula), line_arc_by_hand, Grid{-20, 16, -6, 16, 0.25}, 1e-6);
  report("3a", a.disagree == 0, "line-arc instance vs hand formula: " + describe(a));

  const ValidationReport r = run_validation(job, region.formula);
  report("3b", r.pass(), "line-arc instance oracle validation: " + describe(r));
  report("3c", secs < 5.0, fmt("line-arc instance compile time %.3f s (limit 5 s)", secs));
}

void criterion_acas() {
  const tool::Job job = tool::load_job("acas");
  const CompiledRegion region = compile_region(job.trajectory, job.polygon(), job.compile);
  const ValidationReport r = run_validation(job, region.formula);
  const std::size_t segments = count_clauses(region.formula, ClauseInfo::Kind::Segment);
  // Domain start (0, 0) and the junction (b, c b^2) = (2, 2); the far end is unbounded.
  std::vector<Point2> expect{{0, 0}, {2, 2}};
  std::vector<Point2> notches;
  for (const auto& c : region.formula.children())
    if (c.info().kind == ClauseInfo::Kind::Notch) notches.push_back(c.info().placement);
  bool inventory = segments == 2 && notches.size() == expect.size();
  for (std::size_t k = 0; inventory && k < notches.size(); ++k)
    inventory = norm(notches[k] - expect[k]) <= 1e-12;
  std::ostringstream ns;
  for (const auto& n : notches) ns << " (" << n.x << ", " << n.y << ")";
  report("4", r.pass() && inventory,
         fmt("parabola-then-line instance: %zu segment clauses, notches at", segments) + ns.str() + "; " + describe(r));
}

void criterion_dubins() {
  const tool::Job job = tool::load_job("dubins");
  const auto t0 = Clock::now();
  const CompiledRegion region = compile_region(job.trajectory, job.polygon(), job.compile);
  const double secs = seconds_since(t0);
  const ValidationReport r = run_validation(job, region.formula);
  report("5", r.pass() && secs < 10.0,
         "four-piece turn instance: " + describe(r) + fmt("; compile %.3f s (limit 10 s)", secs));
}

bool decided(const Formula& f, Point2 q) { return boundary_distance_estimate(f, q) > 1e-6; }

void property_equivariance() {
  Rng rng(kSeed + 100);
  int cases = 0, compared = 0, bad = 0;
  for (; cases < 200; ++cases) {
    const Trajectory t = random_trajectory(rng);
    const Polygon p = Polygon::make(random_convex(rng));
    const double dx = 0.25 * uniform_int(rng, -40, 40), dy = 0.25 * uniform_int(rng, -40, 40);
    std::vector<Piece> moved, mirrored;
    for (const auto& piece : t.pieces()) {
      moved.push_back(piece.translated(dx, dy));
      mirrored.push_back(piece.mirrored_x());
    }
    const Formula f = compile(t, p);
    const Formula ft = compile(Trajectory::make(std::move(moved)), p);
    const Formula fm = compile(Trajectory::make(std::move(mirrored)), p.mirrored_x());
    for (int j = 0; j < 20; ++j) {
      const Point2 q = near_curve(rng, t, 3);
      const Point2 qt{q.x + dx, q.y + dy}, qm{-q.x, q.y};
      if (!decided(f, q) || !decided(ft, qt) || !decided(fm, qm)) continue;
      ++compared;
      bad += evaluate(ft, qt) != evaluate(f, q) || evaluate(fm, qm) != evaluate(f, q);
    }
  }
  report("6a", bad == 0 && compared > 0,
         fmt("translation/reflection equivariance: %d cases, %d queries, %d mismatches", cases, compared, bad));
}

void property_derivative() {
  Rng rng(kSeed + 101);
  int cases = 0, bad = 0;
  double worst = 0.0;
  while (cases < 200) {
    const Expr e = random_expr(rng, 4);
    if (!e.depends_on(Var::X)) continue;
    const double x = uniform(rng, -3, 3);
    if (!well_separated(e, x)) continue;
    const double fd = central_difference(e, x);
    const double err = std::abs(eval(differentiate(e), x) - fd) / (1 + std::abs(fd));
    worst = std::max(worst, err);
    bad += err > 1e-6;
    ++cases;
  }
  report("6b", bad == 0, fmt("derivative vs finite difference: %d cases, worst relative error %.2e (limit 1e-6)",
                             cases, worst));
}

void property_g_continuity() {
  Rng rng(kSeed + 102);
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double lo = uniform(rng, -5, 4);
    const double hi = lo + uniform(rng, 0.1, 4);
    const Piece p(Orientation::YofX, random_cubic(rng), {lo, hi});
    const double a = uniform(rng, lo, hi), b = uniform(rng, a, hi);
    const ClampedPiece g = clamp(p, {a, b});
    for (double c : {a, b}) {
      const double eps = 1e-13 / (1 + std::abs(p.slope(c)));
      const double jump = std::max(std::abs(g(c - eps) - g(c)), std::abs(g(c + eps) - g(c)));
      worst = std::max(worst, jump);
      bad += jump > 1e-12;
    }
  }
  report("6c", bad == 0, fmt("g continuity at clamp points: 200 cases, largest jump %.2e", worst));
}

void property_inflation() {
  Rng rng(kSeed + 103);
  int compared = 0, bad = 0;
  for (int k = 0; k < 200; ++k) {
    const Trajectory t = random_trajectory(rng);
    auto object = random_convex(rng, 3, 6);
    auto obstacle = random_convex(rng, 3, 6);
    for (auto& v : object) v = 0.5 * v;
    for (auto& v : obstacle) v = 0.5 * v;
    const Formula f = compile(t, inflate(Polygon::make(object), Polygon::make(obstacle)));
    const auto samples = sample_curve(t, -kInf, kInf, 1500);
    const double gap = max_gap(samples);
    for (int j = 0; j < 5; ++j) {
      const Point2 q = near_curve(rng, t, 2.5);
      const Truth truth = collision_truth(object, obstacle, samples, gap, q, 1e-7);
      if (truth == Truth::Unknown || !decided(f, q)) continue;
      ++compared;
      bad += evaluate(f, q) != (truth == Truth::Unsafe);
    }
  }
  report("6d", bad == 0 && compared > 0,
         fmt("inflation reduction vs two-body collision: 200 cases, %d queries, %d mismatches", compared, bad));
}

void property_notch_mutation() {
  Rng rng(kSeed + 104);
  int genuine = 0, missed = 0;
  for (int k = 0; k < 2000 && genuine < 200; ++k) {
    const Trajectory t = random_parabola(rng);
    const Polygon p = random_body(rng);
    const CompiledRegion region = compile_region(t, p);
    const auto samples = sample_curve(t, -kInf, kInf, 8000);
    const double gap = max_gap(samples);
    double reach = 0.0;
    for (const auto& v : p.vertices()) reach = std::max(reach, norm(v));
    for (std::size_t idx = 0; idx < region.formula.children().size(); ++idx) {
      const ClauseInfo& info = region.formula.children()[idx].info();
      if (info.kind != ClauseInfo::Kind::Notch) continue;
      const Formula reduced = without_clause(region.formula, idx);
      const auto footprint = placed(p.vertices(), info.placement);
      std::optional<Point2> hole;
      for (int j = 0; j < 4000 && !hole; ++j) {
        const Point2 q{info.placement.x + uniform(rng, -reach, reach), info.placement.y + uniform(rng, -reach, reach)};
        if (!winding_inside(footprint, q) || evaluate(reduced, q)) continue;
        if (boundary_distance_estimate(reduced, q) <= 1e-6) continue;
        if (point_truth(p.vertices(), samples, gap, q, 0.01) == Truth::Unsafe) hole = q;
      }
      if (!hole) continue;
      const double s = 0.01;
      OracleConfig cfg;
      cfg.grid = Grid{hole->x - 20 * s, hole->x + 20 * s, hole->y - 20 * s, hole->y + 20 * s, s};
      cfg.trajectory_step = 1e-3;
      missed += validate(reduced, t, p, cfg).soundness_violations == 0;
      ++genuine;
    }
  }
  report("6e", genuine >= 200 && missed == 0,
         fmt("notch removal on parabola instances: %d notches removed, %d went undetected", genuine, missed));
}

}  // namespace

int main() {
  try {
    criterion_two_line();
    criterion_hexagon_table();
    criterion_line_arc();
    criterion_acas();
    criterion_dubins();
    property_equivariance();
    property_derivative();
    property_g_continuity();
    property_inflation();
    property_notch_mutation();
  } catch (const std::exception& e) {
    std::printf("FAIL  error: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
