#include "cantorqc/analysis.hpp"
#include "cantorqc/dilatation.hpp"
#include "cantorqc/julia.hpp"
#include "cantorqc/qc_map.hpp"

#include <benchmark/benchmark.h>

using namespace cantorqc;

static void BM_BuildLevels(benchmark::State& state) {
    auto seq = GapSequence::seeded_uniform(0.2, 0.8, 7);
    int depth = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(CantorLevels::build(seq, depth));
}
BENCHMARK(BM_BuildLevels)->Arg(8)->Arg(12)->Arg(16);

static void BM_GluedMapEval(benchmark::State& state) {
    auto map = PiecewiseQCMap::build(GapSequence::constant(0.5),
                                     GapSequence::constant(1.0 / 3), 1.0 / 3,
                                     static_cast<int>(state.range(0)));
    Cpx z(0.41, 0.07);
    for (auto _ : state) benchmark::DoNotOptimize(map.eval(z));
}
BENCHMARK(BM_GluedMapEval)->Arg(4)->Arg(8)->Arg(12);

static void BM_DilatationLedger(benchmark::State& state) {
    auto a = GapSequence::constant(0.5);
    auto b = GapSequence::constant(1.0 / 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            build_ledger(a, b, 1.0 / 3, static_cast<int>(state.range(0)), 50));
}
BENCHMARK(BM_DilatationLedger)->Arg(8)->Arg(32);

static void BM_BoxDimension(benchmark::State& state) {
    auto levels = CantorLevels::build(GapSequence::constant(1.0 / 3),
                                      static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(box_dimension(levels));
}
BENCHMARK(BM_BoxDimension)->Arg(10)->Arg(14);

static void BM_JuliaCensus(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fatou_exhaustion_census(
            Cpx(5.0), 3, static_cast<int>(state.range(0)), 3.0));
}
BENCHMARK(BM_JuliaCensus)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
