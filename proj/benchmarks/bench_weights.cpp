#include <benchmark/benchmark.h>

#include "fbdf/mlf.hpp"
#include "fbdf/weights.hpp"

using namespace fbdf;

static void Weights(benchmark::State& state, SchemeKind kind) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto w = make_weights(kind, Alpha(0.6), n);
        benchmark::DoNotOptimize(w.conv().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(Weights, gl, SchemeKind::GrunwaldLetnikov)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK_CAPTURE(Weights, l1, SchemeKind::L1)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK_CAPTURE(Weights, bdf2, SchemeKind::Bdf2)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK_CAPTURE(Weights, qia, SchemeKind::Qia)->RangeMultiplier(10)->Range(1000, 100000);

static void QiaRow(benchmark::State& state) {
    const auto w = qia_weights(Alpha(0.6), 100000);
    std::vector<double> row;
    for (auto _ : state) {
        w.row(static_cast<std::size_t>(state.range(0)), row);
        benchmark::DoNotOptimize(row.data());
    }
}
BENCHMARK(QiaRow)->Arg(1000)->Arg(100000);

static void MittagLeffler(benchmark::State& state) {
    const double z = -static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ml(0.6, z));
}
// Series, integral and asymptotic branches respectively.
BENCHMARK(MittagLeffler)->Arg(2)->Arg(12)->Arg(200);
