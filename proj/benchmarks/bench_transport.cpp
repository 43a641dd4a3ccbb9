#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "wbr/transport.hpp"

namespace {

const wbr::StandardProfile g = wbr::StandardProfile::gaussian();

std::vector<wbr::GaussianMeasureMV> random_measures(int d, std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<wbr::GaussianMeasureMV> measures;
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::MatrixXd a(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) a(r, c) = normal(rng);
        measures.emplace_back(Eigen::VectorXd::Zero(d),
                              a * a.transpose() + 0.2 * Eigen::MatrixXd::Identity(d, d));
    }
    return measures;
}

void BM_W2Distance1D(benchmark::State& state) {
    const wbr::LocationScale a(g, 0.0, 1.0);
    const wbr::LocationScale b(g, 1.0, 2.0);
    const auto grid = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(wbr::w2_1d(a, b, grid));
}
BENCHMARK(BM_W2Distance1D)->Arg(1'000)->Arg(10'000);

void BM_Barycenter1D(benchmark::State& state) {
    std::vector<wbr::LocationScale> members;
    for (int i = 0; i < 8; ++i)
        members.emplace_back(g, 0.001 * i, 0.01 + 0.002 * i);
    const wbr::WeightedEnsemble ensemble(members, std::vector<double>(8, 0.125));
    for (auto _ : state) benchmark::DoNotOptimize(wbr::barycenter_1d(ensemble));
}
BENCHMARK(BM_Barycenter1D);

void BM_SqrtmSpd(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto measures = random_measures(d, 1, 9);
    for (auto _ : state) benchmark::DoNotOptimize(wbr::sqrtm_spd(measures[0].covariance()));
}
BENCHMARK(BM_SqrtmSpd)->Arg(2)->Arg(5)->Arg(20);

void BM_BarycenterGaussianMV(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto measures = random_measures(d, 4, 10);
    const std::vector<double> weights(4, 0.25);
    for (auto _ : state)
        benchmark::DoNotOptimize(wbr::barycenter_gaussian_mv(measures, weights));
}
BENCHMARK(BM_BarycenterGaussianMV)->Arg(2)->Arg(5);

}  // namespace
