#include <benchmark/benchmark.h>

#include <cmath>

#include "sklsc/expression.hpp"
#include "sklsc/family.hpp"
#include "sklsc/grid.hpp"
#include "sklsc/spectral.hpp"

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

sklsc::ScalarField circle_potential(const sklsc::GridPtr& grid) {
  return evaluate_on_grid(sklsc::parse_expression("sin(x1) + 0.1"), grid);
}

void BM_Laplacian1D(benchmark::State& state) {
  const auto grid = sklsc::make_grid({static_cast<int>(state.range(0))}, {kTwoPi});
  const sklsc::ScalarField u = circle_potential(grid);
  for (auto _ : state) benchmark::DoNotOptimize(sklsc::laplacian(u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid->size()));
}
BENCHMARK(BM_Laplacian1D)->Arg(64)->Arg(1024)->Arg(16384);

void BM_Laplacian4D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto grid = sklsc::make_grid({n, n, n, n}, {kTwoPi, kTwoPi, kTwoPi, kTwoPi});
  sklsc::ScalarField u(grid);
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = std::sin(grid->coord(0, grid->axis_index(0, i)));
  for (auto _ : state) benchmark::DoNotOptimize(sklsc::laplacian(u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid->size()));
}
BENCHMARK(BM_Laplacian4D)->Arg(8)->Arg(12);

void BM_GroundState(benchmark::State& state) {
  const auto grid = sklsc::make_grid({static_cast<int>(state.range(0))}, {kTwoPi});
  const sklsc::SchrodingerOperator op(grid, circle_potential(grid));
  for (auto _ : state) benchmark::DoNotOptimize(sklsc::ground_state(op));
}
BENCHMARK(BM_GroundState)->Arg(64)->Arg(256)->Arg(1024);

void BM_SklscPotential(benchmark::State& state) {
  const auto grid = sklsc::make_grid({1024}, {kTwoPi});
  sklsc::BalancedBaseData base;
  base.n = 2;
  base.grid = grid;
  base.kind = sklsc::BaseKind::synthetic_kahler;
  base.SC_b = evaluate_on_grid(sklsc::parse_expression("sin(x1) - 0.2"), grid);
  base.S_b = 2.0 * base.SC_b;
  const sklsc::KappaFamily fam{base};
  for (auto _ : state) benchmark::DoNotOptimize(sklsc::sklsc_potential(fam, 1.2));
}
BENCHMARK(BM_SklscPotential);

}  // namespace

BENCHMARK_MAIN();
