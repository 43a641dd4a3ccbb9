#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "wbr/backtest.hpp"
#include "wbr/volatility.hpp"

namespace {

std::vector<std::vector<double>> synthetic_returns(std::size_t assets, std::size_t days) {
    std::mt19937 rng(12);
    std::normal_distribution<double> normal(0.0002, 0.012);
    std::vector<std::vector<double>> out(assets, std::vector<double>(days));
    for (auto& series : out)
        for (double& x : series) x = normal(rng);
    return out;
}

void BM_EwmaPath750(benchmark::State& state) {
    const auto returns = synthetic_returns(1, 750);
    for (auto _ : state)
        benchmark::DoNotOptimize(wbr::ewma_path(returns[0], wbr::EwmaConfig{0.94}, 0.01));
}
BENCHMARK(BM_EwmaPath750);

void BM_KupiecTest(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(wbr::kupiec_test(2220, 225, 0.1));
}
BENCHMARK(BM_KupiecTest);

void BM_RollingBacktest(benchmark::State& state) {
    const auto returns = synthetic_returns(2, 2971);
    wbr::BacktestConfig cfg;
    cfg.window = 750;
    cfg.model = static_cast<wbr::Model>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(wbr::rolling_backtest(returns, cfg));
}
BENCHMARK(BM_RollingBacktest)
    ->Arg(static_cast<int>(wbr::Model::wb_normal))
    ->Arg(static_cast<int>(wbr::Model::wb_normal_star))
    ->Arg(static_cast<int>(wbr::Model::varcov));

}  // namespace
