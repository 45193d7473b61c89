// Microbenchmarks for the per-step hot spots: flux assembly, the implicit
// diffusion solves, a full IMEX step, generator application and the
// interpolation kernel used by reconstruction.

#include <benchmark/benchmark.h>

#include <cmath>

#include "selfsim/config.hpp"
#include "selfsim/driver.hpp"
#include "selfsim/grid.hpp"
#include "selfsim/group_action.hpp"
#include "selfsim/spatial_disc.hpp"

namespace {

using namespace selfsim;

Field bump1d(int n) {
  return sample_function(Grid::line(-8.0, 8.0, n), [](const std::array<double, 3>& x) {
    return std::exp(-x[0] * x[0]) * (1.0 + 0.3 * x[0]);
  });
}

Field bump2d(int n) {
  return sample_function(Grid::box2({-5.0, -5.0}, {5.0, 5.0}, {n, n}),
                         [](const std::array<double, 3>& x) {
                           return std::exp(-x[0] * x[0] - 1.3 * x[1] * x[1]);
                         });
}

AlgebraElement rates(int d) {
  AlgebraElement mu{d, 0.8};
  mu.mu3[0] = -1.1;
  return mu;
}

void BM_ExplicitRhs1d(benchmark::State& state) {
  const Field v = bump1d(int(state.range(0)));
  CoMovingRHS rhs(v.grid(), 2.0, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(rhs.explicit_rhs(v, rates(1)));
}
BENCHMARK(BM_ExplicitRhs1d)->Arg(400)->Arg(1600)->Arg(6400);

void BM_ExplicitRhs2d(benchmark::State& state) {
  const Field v = bump2d(int(state.range(0)));
  CoMovingRHS rhs(v.grid(), 1.5, 0.4);
  AlgebraElement mu = rates(2);
  mu.mu3[1] = 0.4;
  for (auto _ : state) benchmark::DoNotOptimize(rhs.explicit_rhs(v, mu));
}
BENCHMARK(BM_ExplicitRhs2d)->Arg(150)->Arg(300);

void BM_DiffusionSolve1d(benchmark::State& state) {
  const Field v = bump1d(int(state.range(0)));
  CoMovingRHS rhs(v.grid(), 2.0, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(rhs.diffusion_solve(v, 1e-3));
}
BENCHMARK(BM_DiffusionSolve1d)->Arg(1600)->Arg(6400);

void BM_DiffusionSolve2d(benchmark::State& state) {
  const Field v = bump2d(int(state.range(0)));
  CoMovingRHS rhs(v.grid(), 1.5, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(rhs.diffusion_solve(v, 1e-3));
}
BENCHMARK(BM_DiffusionSolve2d)->Arg(150)->Arg(300);

void BM_ImexStep1d(benchmark::State& state) {
  SolverConfig cfg = preset_config("1d-p2-nu0.4-fixed");
  apply_override(cfg, "n = " + std::to_string(state.range(0)));
  const Field u0 = initial_condition(cfg);
  Simulator sim(cfg, u0);
  FreezingState s0 = sim.initial_state(u0);
  for (auto _ : state) {
    FreezingState s = s0;
    sim.imex_step(s, 1e-4);
    benchmark::DoNotOptimize(s.v);
  }
}
BENCHMARK(BM_ImexStep1d)->Arg(400)->Arg(1600);

void BM_GeneratorApply(benchmark::State& state) {
  const Field v = bump1d(int(state.range(0)));
  GeneratorSet gens(v.grid(), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(gens.apply(0, v));
}
BENCHMARK(BM_GeneratorApply)->Arg(1600)->Arg(6400);

void BM_Interpolate(benchmark::State& state) {
  const Field v = bump1d(1600);
  double x = -7.9;
  for (auto _ : state) {
    x = x < 7.9 ? x + 1e-3 : -7.9;
    benchmark::DoNotOptimize(interpolate(v, {x, 0.0, 0.0}));
  }
}
BENCHMARK(BM_Interpolate);

}  // namespace

BENCHMARK_MAIN();
