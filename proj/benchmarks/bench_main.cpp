#include "swept/oracle.hpp"
#include "swept/region.hpp"
#include "swept/transitions.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace swept;

namespace {

Piece yx(const char* f, double lo, double hi) { return Piece(Orientation::YofX, parse(f), {lo, hi}); }

Polygon rectangle(double w, double h) { return Polygon::make({{w, h}, {-w, h}, {-w, -h}, {w, -h}}); }

Trajectory two_lines() { return Trajectory::make({yx("-2*x", 0, 5), yx("x - 15", 5, kInf)}); }

Trajectory line_arc() {
  return Trajectory::make({yx("-sqrt(3)/3*(x - 5) + 5*sqrt(3)", -12, 5), yx("sqrt(100 - x^2)", 5, 10)});
}

Polygon hexagon() { return Polygon::regular(6, std::sqrt(3.0), 0.0); }

// A wiggly cubic with many slope transitions against an octagon.
Trajectory wiggle() { return Trajectory::make({yx("x^3 - 4*x + 1/2", -3, 3)}); }

Polygon octagon() { return Polygon::regular(8, 1.0, std::numbers::pi / 8); }

void BM_CompileTwoLines(benchmark::State& state) {
  const Trajectory t = two_lines();
  const Polygon p = rectangle(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(compile(t, p));
}
BENCHMARK(BM_CompileTwoLines)->Unit(benchmark::kMicrosecond);

void BM_CompileLineArc(benchmark::State& state) {
  const Trajectory t = line_arc();
  const Polygon p = hexagon();
  for (auto _ : state) benchmark::DoNotOptimize(compile(t, p));
}
BENCHMARK(BM_CompileLineArc)->Unit(benchmark::kMillisecond);

void BM_TransitionsCubic(benchmark::State& state) {
  const Trajectory t = wiggle();
  const Polygon p = octagon();
  for (auto _ : state) benchmark::DoNotOptimize(find_transitions(t, p));
}
BENCHMARK(BM_TransitionsCubic)->Unit(benchmark::kMillisecond);

void BM_EvaluateLineArc(benchmark::State& state) {
  const Formula f = compile(line_arc(), hexagon());
  double x = -20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(f, {x, 4.0}));
    x = x > 16.0 ? -20.0 : x + 0.37;
  }
}
BENCHMARK(BM_EvaluateLineArc);

void BM_OracleMask(benchmark::State& state) {
  const Trajectory t = line_arc();
  const Polygon p = hexagon();
  OracleConfig cfg;
  cfg.grid = Grid{-20, 16, -6, 16, 0.1};
  cfg.trajectory_step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_mask(t, p, cfg));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * cfg.grid.size()));
}
BENCHMARK(BM_OracleMask)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
