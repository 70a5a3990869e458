// Serial reference kernels against their OpenMP counterparts.

#include "sumbound/makarov.hpp"
#include "sumbound/montecarlo.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace sumbound;

const SumProblem kProblem{NormalMarginal(1.0, 0.1), NormalMarginal(1.5, 0.15)};

void BM_BoundCurveSerial(benchmark::State& state)
{
    const auto grid = linspace(1.8, 3.2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_curve_serial(kProblem, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BoundCurveParallel(benchmark::State& state)
{
    const auto grid = linspace(1.8, 3.2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_curve(kProblem, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OracleCurveSerial(benchmark::State& state)
{
    const auto grid = linspace(1.8, 3.2, 200);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_curve_serial(kProblem, grid, 1e-4));
    }
}

void BM_OracleCurveParallel(benchmark::State& state)
{
    const auto grid = linspace(1.8, 3.2, 200);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_curve(kProblem, grid, 1e-4));
    }
}

template <DependenceKind Kind>
void BM_DrawSumsSerial(benchmark::State& state)
{
    const DependenceModel model(Kind, Kind == DependenceKind::Gaussian ? 0.5 : 2.5);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(draw_sums_serial(model, kProblem, n, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <DependenceKind Kind>
void BM_DrawSumsParallel(benchmark::State& state)
{
    const DependenceModel model(Kind, Kind == DependenceKind::Gaussian ? 0.5 : 2.5);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(draw_sums(model, kProblem, n, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_BoundCurveSerial)->Arg(200)->Arg(20000);
BENCHMARK(BM_BoundCurveParallel)->Arg(200)->Arg(20000);
BENCHMARK(BM_OracleCurveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleCurveParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawSumsSerial<DependenceKind::Gaussian>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawSumsParallel<DependenceKind::Gaussian>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawSumsSerial<DependenceKind::Clayton>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawSumsParallel<DependenceKind::Clayton>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawSumsSerial<DependenceKind::Gumbel>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawSumsParallel<DependenceKind::Gumbel>)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
