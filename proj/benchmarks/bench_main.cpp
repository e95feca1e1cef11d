#include <benchmark/benchmark.h>

#include <vector>

#include "gpdwell/critical.hpp"
#include "gpdwell/dynamics.hpp"
#include "gpdwell/eigensolver.hpp"
#include "gpdwell/hamiltonian.hpp"
#include "gpdwell/scf.hpp"
#include "gpdwell/wigner.hpp"

using namespace gpdwell;

static void BM_LowestEigenpairs(benchmark::State& state) {
    const Grid grid(6.0, static_cast<int>(state.range(0)));
    const std::vector<double> density(grid.interior_size(), 0.0);
    const auto op = assemble(grid, TrapConfig{5.0, 0.0}, density);
    for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpairs(op, 4, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowestEigenpairs)->RangeMultiplier(2)->Range(1000, 8000)->Complexity();

static void BM_SolveGround(benchmark::State& state) {
    const Grid grid(6.0, 4000);
    const double beta = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_state(grid, TrapConfig{2.0, beta}, 0));
}
BENCHMARK(BM_SolveGround)->Arg(0)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_CriticalBeta0(benchmark::State& state) {
    const Grid grid(6.0, 4000);
    for (auto _ : state) benchmark::DoNotOptimize(find_critical_a(0.0, {0.5, 3.0}, 1e-4, grid));
}
BENCHMARK(BM_CriticalBeta0)->Unit(benchmark::kMillisecond);

static void BM_Wigner(benchmark::State& state) {
    const Grid grid(6.0, static_cast<int>(state.range(0)));
    const auto psi = solve_state(grid, TrapConfig{2.0, 0.0}, 0).state.psi;
    const double p_max = default_momentum_extent(grid);
    const int P = default_momentum_points(p_max);
    for (auto _ : state) benchmark::DoNotOptimize(negativity(wigner_transform(grid, psi, p_max, P)));
}
BENCHMARK(BM_Wigner)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_CrankNicolson(benchmark::State& state) {
    const Grid grid(6.0, 2000);
    const auto packet = coherent_state(grid, 0.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(grid, 10.0, packet, 1e-4, 1000, 1000));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_CrankNicolson)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
