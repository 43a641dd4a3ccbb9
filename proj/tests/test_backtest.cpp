#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "wbr/backtest.hpp"
#include "wbr/errors.hpp"
#include "wbr/volatility.hpp"

using wbr::BacktestConfig;
using wbr::BacktestReport;
using wbr::Convention;
using wbr::DataError;
using wbr::EwmaConfig;
using wbr::KupiecResult;
using wbr::LocationScale;
using wbr::Model;
using wbr::PortfolioSpec;
using wbr::StandardProfile;
using wbr::WeightedEnsemble;

namespace {

std::vector<std::vector<double>> synthetic_returns(std::size_t assets, std::size_t days,
                                                   unsigned seed, double sd = 0.01) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, sd);
    std::vector<std::vector<double>> out(assets, std::vector<double>(days));
    for (auto& series : out)
        for (double& x : series) x = normal(rng);
    return out;
}

}  // namespace

TEST_CASE("chi2_1_sf values") {
    CHECK(wbr::chi2_1_sf(0.0) == 1.0);
    CHECK(std::abs(wbr::chi2_1_sf(3.841459) - 0.05) < 1e-6);
    // 2 (1 - Phi(sqrt(10))), frozen from the Gaussian CDF oracle.
    CHECK(std::abs(wbr::chi2_1_sf(10.0) - 0.0015654023) < 1e-9);
    CHECK(std::abs(wbr::chi2_1_sf(10.0) - 2.0 * (1.0 - oracle::norm_cdf(std::sqrt(10.0)))) <
          1e-15);
    CHECK_THROWS_AS(wbr::chi2_1_sf(-0.1), std::domain_error);
}

TEST_CASE("kupiec test at the expected frequency") {
    const KupiecResult r = wbr::kupiec_test(1000, 100, 0.1);
    CHECK(r.lr == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK_FALSE(r.rejected);
    CHECK(r.observed_rate == 0.1);
}

TEST_CASE("kupiec test reproduces published p-values") {
    // Unfiltered barycenter row: exceptions 225/130/46/30 over 2220 days.
    const KupiecResult a = wbr::kupiec_test(2220, 225, 0.1);
    CHECK(std::abs(a.p_value - 0.8323) < 0.0005);
    CHECK_FALSE(a.rejected);

    const KupiecResult b = wbr::kupiec_test(2220, 130, 0.05);
    CHECK(std::abs(b.p_value - 0.0713) < 0.0005);
    CHECK_FALSE(b.rejected);

    const KupiecResult c = wbr::kupiec_test(2220, 46, 0.01);
    CHECK(std::abs(c.p_value - 9.1307e-06) / 9.1307e-06 < 0.05);
    CHECK(c.rejected);

    const KupiecResult d = wbr::kupiec_test(2220, 30, 0.005);
    CHECK(std::abs(d.p_value - 2.7020e-06) / 2.7020e-06 < 0.05);
    CHECK(d.rejected);
}

TEST_CASE("kupiec edge cases and validation") {
    CHECK(std::isfinite(wbr::kupiec_test(100, 0, 0.05).lr));
    CHECK(std::isfinite(wbr::kupiec_test(100, 100, 0.05).lr));
    CHECK(wbr::kupiec_test(100, 0, 0.05).lr ==
          doctest::Approx(-2.0 * 100.0 * std::log(0.95)).epsilon(1e-12));
    CHECK_THROWS_AS(wbr::kupiec_test(0, 0, 0.05), std::domain_error);
    CHECK_THROWS_AS(wbr::kupiec_test(100, 101, 0.05), std::domain_error);
    CHECK_THROWS_AS(wbr::kupiec_test(100, -1, 0.05), std::domain_error);
    CHECK_THROWS_AS(wbr::kupiec_test(100, 10, 0.0), std::domain_error);
    CHECK_THROWS_AS(wbr::kupiec_test(100, 10, 1.0), std::domain_error);
}

TEST_CASE("model names round-trip") {
    for (Model m : {Model::wb_normal, Model::wb_normal_star, Model::varcov, Model::simple_sum})
        CHECK(wbr::model_from_name(wbr::model_name(m)) == m);
    CHECK_FALSE(wbr::model_from_name("garch").has_value());
}

TEST_CASE("rolling backtest produces one forecast per test day") {
    const auto returns = synthetic_returns(2, 2971, 11);
    BacktestConfig cfg;
    cfg.window = 750;
    const BacktestReport report = wbr::rolling_backtest(returns, cfg);
    CHECK(report.test_days == 2221);
    CHECK(report.realized_losses.size() == 2221);
    REQUIRE(report.records.size() == 4);
    for (const auto& record : report.records) {
        CHECK(record.var_path.size() == 2221);
        CHECK(record.kupiec.observations == 2221);
    }
    // Expected-exception headers at the published counts, tolerating their
    // off-by-one (2220 vs 2221 test days).
    const double expected[4] = {222.0, 111.0, 22.2, 11.1};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(static_cast<double>(report.test_days) * report.records[i].alpha -
                       expected[i]) < 1.0);
}

TEST_CASE("constant zero returns never breach the floored forecast") {
    const std::vector<std::vector<double>> zeros(2, std::vector<double>(30, 0.0));
    for (Model model : {Model::wb_normal, Model::wb_normal_star, Model::varcov, Model::simple_sum}) {
        BacktestConfig cfg;
        cfg.window = 10;
        cfg.model = model;
        const BacktestReport report = wbr::rolling_backtest(zeros, cfg);
        for (const auto& record : report.records) CHECK(record.exceptions == 0);
    }
}

TEST_CASE("iid coverage lands in the 99% binomial band") {
    // Single series: the barycenter forecast is then the true portfolio
    // quantile, so the exception rate must track alpha.
    const auto returns = synthetic_returns(1, 10'750, 404);
    BacktestConfig cfg;
    cfg.window = 750;
    cfg.alphas = {0.05};
    const BacktestReport report = wbr::rolling_backtest(returns, cfg);
    REQUIRE(report.test_days == 10'000);
    const double freq = static_cast<double>(report.records[0].exceptions) / 10'000.0;
    CHECK(freq > 0.0444);
    CHECK(freq < 0.0557);
}

TEST_CASE("engine forecasts match the public risk operations") {
    const auto returns = synthetic_returns(2, 16, 77, 0.02);
    const std::size_t window = 6;
    const StandardProfile g = StandardProfile::gaussian();

    for (Model model : {Model::wb_normal, Model::wb_normal_star, Model::simple_sum}) {
        BacktestConfig cfg;
        cfg.window = window;
        cfg.model = model;
        cfg.alphas = {0.05, 0.01};
        const BacktestReport report = wbr::rolling_backtest(returns, cfg);

        for (std::size_t day = 0; day < report.test_days; ++day) {
            const std::size_t begin = day;
            std::vector<double> means(2), sds(2);
            for (int i = 0; i < 2; ++i) {
                double mean = 0.0;
                for (std::size_t k = 0; k < window; ++k) mean += returns[i][begin + k];
                mean /= static_cast<double>(window);
                double var = 0.0;
                for (std::size_t k = 0; k < window; ++k)
                    var += (returns[i][begin + k] - mean) * (returns[i][begin + k] - mean);
                const double sample_sd = std::sqrt(var / static_cast<double>(window - 1));
                means[i] = mean;
                if (model == Model::wb_normal_star) {
                    const std::span<const double> win(returns[i].data() + begin, window);
                    sds[i] = wbr::ewma_path(win, cfg.ewma, sample_sd).back();
                } else {
                    sds[i] = sample_sd;
                }
            }
            for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
                double expected = 0.0;
                if (model == Model::simple_sum) {
                    const double z = g.quantile(cfg.alphas[a]);
                    std::vector<double> per_asset{-means[0] - sds[0] * z,
                                                  -means[1] - sds[1] * z};
                    expected = wbr::simple_sum_var(per_asset);
                } else {
                    const WeightedEnsemble ensemble(
                        {LocationScale(g, means[0], sds[0]), LocationScale(g, means[1], sds[1])},
                        {0.5, 0.5});
                    expected = wbr::wb_var(ensemble, {cfg.alphas[a], Convention::loss});
                }
                CHECK(std::abs(report.records[a].var_path[day] - expected) < 1e-14);
            }
        }
    }

    // varcov against the public operation on the same window.
    BacktestConfig cfg;
    cfg.window = window;
    cfg.model = Model::varcov;
    cfg.alphas = {0.01};
    const BacktestReport report = wbr::rolling_backtest(returns, cfg);
    for (std::size_t day = 0; day < report.test_days; ++day) {
        Eigen::VectorXd means = Eigen::VectorXd::Zero(2);
        for (int i = 0; i < 2; ++i) {
            for (std::size_t k = 0; k < window; ++k) means(i) += returns[i][day + k];
            means(i) /= static_cast<double>(window);
        }
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                for (std::size_t k = 0; k < window; ++k)
                    cov(i, j) += (returns[i][day + k] - means(i)) *
                                 (returns[j][day + k] - means(j));
                cov(i, j) /= static_cast<double>(window - 1);
            }
        const double expected =
            wbr::varcov_var(means, cov, PortfolioSpec::equal(2), {0.01, Convention::loss});
        CHECK(std::abs(report.records[0].var_path[day] - expected) < 1e-14);
    }
}

TEST_CASE("wb_normal_star honors the first-abs-return seed") {
    const auto returns = synthetic_returns(1, 12, 99, 0.02);
    const std::size_t window = 5;
    BacktestConfig cfg;
    cfg.window = window;
    cfg.model = Model::wb_normal_star;
    cfg.ewma.init = wbr::EwmaInit::first_abs_return;
    cfg.alphas = {0.05};
    const BacktestReport report = wbr::rolling_backtest(returns, cfg);

    const StandardProfile g = StandardProfile::gaussian();
    for (std::size_t day = 0; day < report.test_days; ++day) {
        const std::span<const double> win(returns[0].data() + day, window);
        double mean = 0.0;
        for (double x : win) mean += x;
        mean /= static_cast<double>(window);
        const double sigma0 = std::max(std::abs(win.front()), 1e-12);
        const double sd = wbr::ewma_path(win, cfg.ewma, sigma0).back();
        const double expected = -mean - sd * g.quantile(0.05);
        CHECK(std::abs(report.records[0].var_path[day] - expected) < 1e-14);
    }
}

TEST_CASE("rolling backtest input validation") {
    BacktestConfig cfg;
    cfg.window = 10;
    CHECK_THROWS_AS(wbr::rolling_backtest({}, cfg), DataError);

    std::vector<std::vector<double>> misaligned{std::vector<double>(20, 0.01),
                                                std::vector<double>(19, 0.01)};
    CHECK_THROWS_AS(wbr::rolling_backtest(misaligned, cfg), DataError);

    const auto tiny = synthetic_returns(2, 10, 3);
    CHECK_THROWS_AS(wbr::rolling_backtest(tiny, cfg), DataError);

    const auto data = synthetic_returns(2, 40, 3);
    cfg.window = 1;
    CHECK_THROWS_AS(wbr::rolling_backtest(data, cfg), std::invalid_argument);

    cfg.window = 10;
    cfg.alphas = {1.5};
    CHECK_THROWS_AS(wbr::rolling_backtest(data, cfg), std::domain_error);

    cfg.alphas = {0.05};
    cfg.weights = PortfolioSpec::equal(3);
    CHECK_THROWS_AS(wbr::rolling_backtest(data, cfg), std::invalid_argument);
}
