#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "clf/calibration.hpp"
#include "clf/dynamics.hpp"
#include "clf/stable.hpp"
#include "clf/stationary.hpp"
#include "clf/tails.hpp"

using namespace clf;

static void BM_PdfGrid(benchmark::State& state) {
    const StableParams p(1.5, 1.0);
    const GridSpec grid{-64.0, 64.0, static_cast<std::size_t>(state.range(0)) + 1};
    for (auto _ : state) benchmark::DoNotOptimize(pdf_grid(p, grid));
}
BENCHMARK(BM_PdfGrid)->Arg(1 << 13)->Arg(1 << 16)->Unit(benchmark::kMicrosecond);

static void BM_Step(benchmark::State& state) {
    const Potential pot(1.0, 4.0, 0.0);
    const StableParams noise(1.5, 1.0);
    Rng rng(1);
    double r = 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(r = step(pot, noise, r, 0.01, rng));
}
BENCHMARK(BM_Step);

static void BM_PseudoLikelihood(benchmark::State& state) {
    const ModelParams p{0.5, 2.2, 1.2, 1.5, 1.5};
    Rng rng(2);
    const auto g = simulate_series(p, static_cast<std::size_t>(state.range(0)), rng);
    pseudo_log_likelihood(p, g);  // warms the per-mu density cache
    for (auto _ : state) benchmark::DoNotOptimize(pseudo_log_likelihood(p, g));
}
BENCHMARK(BM_PseudoLikelihood)->Arg(200)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_FitMle(benchmark::State& state) {
    const ModelParams p{0.5, 2.2, 1.2, 1.5, 1.5};
    Rng rng(3);
    const auto g = simulate_series(p, 200, rng);
    for (auto _ : state) benchmark::DoNotOptimize(fit_mle(g));
}
BENCHMARK(BM_FitMle)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_StationaryFfp(benchmark::State& state) {
    const Potential pot(1.0, 4.0, 0.0);
    const StableParams noise(1.5, 1.0);
    const auto grid = default_stationary_grid(pot, noise);
    for (auto _ : state) benchmark::DoNotOptimize(solve_stationary_ffp(pot, noise, grid));
}
BENCHMARK(BM_StationaryFfp)->Unit(benchmark::kMillisecond)->Iterations(2);

static void BM_Kde(benchmark::State& state) {
    Rng rng(4);
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    for (double& v : x) v = sample_standard(1.5, rng);
    const GridSpec grid{-20.0, 20.0, 2048};
    const double bw = silverman_bandwidth(x);
    for (auto _ : state) benchmark::DoNotOptimize(kde(x, bw, grid));
}
BENCHMARK(BM_Kde)->Arg(1000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_SelectXmin(benchmark::State& state) {
    Rng rng(5);
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    for (double& v : x) v = std::pow(uniform_open(rng), -1.0 / 1.7);
    for (auto _ : state) benchmark::DoNotOptimize(select_xmin(x));
}
BENCHMARK(BM_SelectXmin)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
