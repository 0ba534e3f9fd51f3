#include <benchmark/benchmark.h>

#include "ionshape/equilibrium.hpp"
#include "ionshape/modes.hpp"
#include "ionshape/scenario.hpp"

using namespace ionshape;

static void BM_SolveEquilibrium(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_equilibrium(n, 1.343));
    }
}
BENCHMARK(BM_SolveEquilibrium)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_HessianDiagonalize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainConfiguration chain = solve_equilibrium(n, 1.343);
    const StateFrequencies freqs{150.0, 198.5};
    const Eigen::MatrixXd h = build_hessian(chain, ElectronicAssignment::all_ell(n, freqs));
    for (auto _ : state) {
        benchmark::DoNotOptimize(diagonalize(h));
    }
}
BENCHMARK(BM_HessianDiagonalize)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ScanPoint(benchmark::State& state) {
    ScenarioConfig cfg;
    static const ScanContext ctx = prepare_scan(cfg, ModeSet::All);
    const double nu = 6.0 * 2.0 * M_PI / ctx.tau;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_scan_point(ctx, nu, 0.0));
    }
}
BENCHMARK(BM_ScanPoint)->Unit(benchmark::kMillisecond);

static void BM_DelayScanPoint(benchmark::State& state) {
    ScenarioConfig cfg;
    static const ScanContext ctx = prepare_scan(cfg, ModeSet::All);
    const double nu = 6.0 * 2.0 * M_PI / ctx.tau;
    const double delay = 2.0 * 2.0 * M_PI / ctx.bus_frequency;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_scan_point(ctx, nu, delay));
    }
}
BENCHMARK(BM_DelayScanPoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
