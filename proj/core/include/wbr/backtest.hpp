#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wbr/risk.hpp"
#include "wbr/volatility.hpp"

namespace wbr {

/// Forecast models for the rolling backtest.
///   wb_normal       barycenter VaR with window sample means and SDs
///   wb_normal_star  barycenter VaR with EWMA-filtered SDs
///   varcov          variance-covariance portfolio VaR
///   simple_sum      unweighted sum of stand-alone per-asset VaRs
enum class Model { wb_normal, wb_normal_star, varcov, simple_sum };

std::string_view model_name(Model model);
std::optional<Model> model_from_name(std::string_view name);

struct BacktestConfig {
    std::size_t window = 750;
    std::vector<double> alphas = {0.1, 0.05, 0.01, 0.005};
    Model model = Model::wb_normal;
    EwmaConfig ewma{};
    // Portfolio weights; also the barycenter weights. Empty means equal
    // weights over the assets.
    std::optional<PortfolioSpec> weights{};
};

/// Kupiec proportion-of-failures test of `exceptions` exceptions in
/// `observations` trials against expected rate `expected_rate`.
struct KupiecResult {
    std::int64_t observations = 0;  // m
    std::int64_t exceptions = 0;    // x
    double observed_rate = 0.0;     // h = x / m
    double expected_rate = 0.0;     // p
    double lr = 0.0;
    double p_value = 1.0;           // upper tail of chi-squared(1) at lr
    bool rejected = false;          // at 95% confidence
};

struct AlphaRecord {
    double alpha = 0.0;
    std::vector<double> var_path;   // one loss-convention forecast per test day
    std::int64_t exceptions = 0;
    KupiecResult kupiec;
};

struct BacktestReport {
    Model model = Model::wb_normal;
    std::size_t window = 0;
    std::size_t observations = 0;          // total input days
    std::size_t test_days = 0;             // observations - window
    std::vector<double> realized_losses;   // per test day
    std::vector<AlphaRecord> records;      // one per alpha
};

/// Upper-tail probability of a chi-squared(1) variable: 2 (1 - Phi(sqrt(x))).
/// Throws std::domain_error for negative input.
double chi2_1_sf(double lr);

/// Kupiec likelihood ratio
///   LR = -2 [ (m-x) ln(1-p) + x ln p - (m-x) ln(1-h) - x ln h ]
/// with h = x/m and the convention 0 ln 0 = 0; rejected when the p-value
/// drops below 0.05 (equivalently LR above the chi-squared(1) 95% quantile
/// 3.841459).
KupiecResult kupiec_test(std::int64_t observations, std::int64_t exceptions,
                         double expected_rate);

/// Rolling next-day VaR backtest. `asset_returns` holds one aligned return
/// sequence per asset. For each test day the model is fitted on the
/// preceding `window` observations (no look-ahead), the loss-convention
/// VaR is forecast at every alpha, and an exception is recorded when the
/// realized portfolio loss strictly exceeds the forecast. Sample SDs are
/// floored at 1e-12 so degenerate windows keep the scale positive.
/// Throws DataError when fewer than window + 1 observations are available
/// or the per-asset sequences disagree in length.
BacktestReport rolling_backtest(const std::vector<std::vector<double>>& asset_returns,
                                const BacktestConfig& config);

}  // namespace wbr
