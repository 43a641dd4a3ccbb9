#include <benchmark/benchmark.h>

#include "wbr/distributions.hpp"

namespace {

const wbr::StandardProfile g = wbr::StandardProfile::gaussian();

void BM_GaussianQuantile(benchmark::State& state) {
    double u = 1e-4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.quantile(u));
        u += 1e-4;
        if (u >= 1.0) u = 1e-4;
    }
}
BENCHMARK(BM_GaussianQuantile);

void BM_GaussianTailMean(benchmark::State& state) {
    double alpha = 0.90;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.tail_mean(alpha));
        alpha += 1e-5;
        if (alpha >= 0.999) alpha = 0.90;
    }
}
BENCHMARK(BM_GaussianTailMean);

void BM_LocationScaleQuantile(benchmark::State& state) {
    const wbr::LocationScale d(g, 0.00034, 0.01385);
    double u = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(d.quantile(u));
        u += 1e-4;
        if (u >= 0.999) u = 0.001;
    }
}
BENCHMARK(BM_LocationScaleQuantile);

}  // namespace
