#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fbdf/problems.hpp"
#include "fbdf/solver.hpp"

using namespace fbdf;

static void HistoryDot(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t dim = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> row(n + 1), states(n * dim);
    for (auto& v : row) v = u(rng);
    for (auto& v : states) v = u(rng);
    Vector out;
    for (auto _ : state) {
        history_dot(row, states, dim, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * dim));
}
BENCHMARK(HistoryDot)->Args({1000, 1})->Args({10000, 1})->Args({1000, 3})->Args({500, 961});

static void CubicSolve(benchmark::State& state, SchemeKind kind) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto prob = scalar_cubic_problem();
    const auto w = make_weights(kind, Alpha(0.6), n);
    Vector x0(1);
    x0 << 2.0;
    for (auto _ : state) {
        auto tr = fbdf_solve(prob, w, {0.5, n}, x0);
        benchmark::DoNotOptimize(tr.data.data());
    }
}
BENCHMARK_CAPTURE(CubicSolve, gl, SchemeKind::GrunwaldLetnikov)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(CubicSolve, qia, SchemeKind::Qia)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void LorenzSolve(benchmark::State& state) {
    const auto prob = lorenz_problem({});
    Vector x0(3);
    x0 << 2.0, 1.0, 2.0;
    for (auto _ : state) {
        auto tr = fbdf_solve(prob, SchemeKind::Bdf2, Alpha(0.6), {0.2, 500}, x0);
        benchmark::DoNotOptimize(tr.data.data());
    }
}
BENCHMARK(LorenzSolve)->Unit(benchmark::kMillisecond);

static void FabmLorenz(benchmark::State& state) {
    const auto prob = lorenz_problem({});
    Vector x0(3);
    x0 << 2.0, 1.0, 2.0;
    for (auto _ : state) {
        auto tr = fabm_solve(prob, Alpha(0.6), {0.2, 500}, x0);
        benchmark::DoNotOptimize(tr.data.data());
    }
}
BENCHMARK(FabmLorenz)->Unit(benchmark::kMillisecond);

static void SubdiffusionSolve(benchmark::State& state) {
    const auto sd = subdiffusion_problem(31, 31, 1.0);
    const Vector u0 = subdiffusion_initial(sd.grid, 1);
    for (auto _ : state) {
        auto tr = fbdf_solve(sd.problem, SchemeKind::L1, Alpha(0.6), {0.2, static_cast<std::size_t>(state.range(0))}, u0);
        benchmark::DoNotOptimize(tr.data.data());
    }
}
BENCHMARK(SubdiffusionSolve)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
