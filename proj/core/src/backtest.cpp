#include "wbr/backtest.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wbr/errors.hpp"

namespace wbr {

namespace {

constexpr double kSigmaFloor = 1e-12;

double sample_mean(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x, double mean) {
    double acc = 0.0;
    for (double v : x) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

}  // namespace

std::string_view model_name(Model model) {
    switch (model) {
        case Model::wb_normal: return "wb_normal";
        case Model::wb_normal_star: return "wb_normal_star";
        case Model::varcov: return "varcov";
        case Model::simple_sum: return "simple_sum";
    }
    return "unknown";
}

std::optional<Model> model_from_name(std::string_view name) {
    if (name == "wb_normal") return Model::wb_normal;
    if (name == "wb_normal_star") return Model::wb_normal_star;
    if (name == "varcov") return Model::varcov;
    if (name == "simple_sum") return Model::simple_sum;
    return std::nullopt;
}

double chi2_1_sf(double lr) {
    if (lr < 0.0)
        throw std::domain_error("chi2_1_sf: statistic must be nonnegative");
    return std::erfc(std::sqrt(0.5 * lr));
}

KupiecResult kupiec_test(std::int64_t observations, std::int64_t exceptions,
                         double expected_rate) {
    if (observations < 1)
        throw std::domain_error("kupiec_test: observations must be at least 1");
    if (exceptions < 0 || exceptions > observations)
        throw std::domain_error("kupiec_test: exceptions must lie in [0, observations]");
    if (!(expected_rate > 0.0 && expected_rate < 1.0))
        throw std::domain_error("kupiec_test: expected rate must be in (0, 1)");

    const double m = static_cast<double>(observations);
    const double x = static_cast<double>(exceptions);
    const double h = x / m;
    const double p = expected_rate;

    // Grouped as differences of log-likelihood terms (with the 0 ln 0 = 0
    // convention), so h == p gives exactly zero.
    double lr = 0.0;
    if (x > 0.0) lr += x * (std::log(p) - std::log(h));
    if (m - x > 0.0) lr += (m - x) * (std::log1p(-p) - std::log1p(-h));
    lr *= -2.0;
    lr = std::max(lr, 0.0);  // clear rounding noise; the ratio is nonnegative

    KupiecResult result;
    result.observations = observations;
    result.exceptions = exceptions;
    result.observed_rate = h;
    result.expected_rate = p;
    result.lr = lr;
    result.p_value = chi2_1_sf(lr);
    result.rejected = result.p_value < 0.05;
    return result;
}

BacktestReport rolling_backtest(const std::vector<std::vector<double>>& asset_returns,
                                const BacktestConfig& config) {
    const std::size_t n_assets = asset_returns.size();
    if (n_assets == 0)
        throw DataError("rolling_backtest: at least one asset required");
    const std::size_t total = asset_returns.front().size();
    for (std::size_t i = 1; i < n_assets; ++i)
        if (asset_returns[i].size() != total)
            throw DataError("rolling_backtest: asset " + std::to_string(i) + " has " +
                            std::to_string(asset_returns[i].size()) +
                            " observations, expected " + std::to_string(total));

    if (config.window < 2)
        throw std::invalid_argument("rolling_backtest: window must be at least 2");
    if (config.alphas.empty())
        throw std::invalid_argument("rolling_backtest: at least one alpha required");
    for (double alpha : config.alphas)
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("rolling_backtest: alpha must be in (0, 1)");
    if (total <= config.window)
        throw DataError("rolling_backtest: " + std::to_string(total) +
                        " observations cannot cover a window of " +
                        std::to_string(config.window));

    const PortfolioSpec weights =
        config.weights ? *config.weights : PortfolioSpec::equal(n_assets);
    if (weights.size() != n_assets)
        throw std::invalid_argument("rolling_backtest: weight count must match asset count");

    const std::size_t window = config.window;
    const std::size_t test_days = total - window;
    const std::size_t n_alphas = config.alphas.size();

    const StandardProfile gaussian = StandardProfile::gaussian();
    std::vector<double> z(n_alphas);
    for (std::size_t a = 0; a < n_alphas; ++a) z[a] = gaussian.quantile(config.alphas[a]);

    BacktestReport report;
    report.model = config.model;
    report.window = window;
    report.observations = total;
    report.test_days = test_days;
    report.realized_losses.resize(test_days);
    report.records.resize(n_alphas);
    for (std::size_t a = 0; a < n_alphas; ++a) {
        report.records[a].alpha = config.alphas[a];
        report.records[a].var_path.resize(test_days);
    }

    std::vector<double> means(n_assets);
    std::vector<double> sds(n_assets);

    for (std::size_t t = window; t < total; ++t) {
        const std::size_t day = t - window;
        const std::size_t begin = t - window;

        for (std::size_t i = 0; i < n_assets; ++i) {
            const std::span<const double> win(asset_returns[i].data() + begin, window);
            means[i] = sample_mean(win);
            if (config.model == Model::wb_normal_star) {
                double sigma0 = config.ewma.init == EwmaInit::first_abs_return
                                    ? std::abs(win.front())
                                    : sample_sd(win, means[i]);
                sigma0 = std::max(sigma0, kSigmaFloor);
                sds[i] = std::max(ewma_path(win, config.ewma, sigma0).back(), kSigmaFloor);
            } else {
                sds[i] = std::max(sample_sd(win, means[i]), kSigmaFloor);
            }
        }

        double mean_part = 0.0;
        double scale_part = 0.0;
        switch (config.model) {
            case Model::wb_normal:
            case Model::wb_normal_star: {
                for (std::size_t i = 0; i < n_assets; ++i) {
                    mean_part += weights.weights()[i] * means[i];
                    scale_part += weights.weights()[i] * sds[i];
                }
                break;
            }
            case Model::varcov: {
                double variance = 0.0;
                for (std::size_t i = 0; i < n_assets; ++i) {
                    mean_part += weights.weights()[i] * means[i];
                    for (std::size_t j = 0; j < n_assets; ++j) {
                        double cov = 0.0;
                        for (std::size_t k = 0; k < window; ++k)
                            cov += (asset_returns[i][begin + k] - means[i]) *
                                   (asset_returns[j][begin + k] - means[j]);
                        cov /= static_cast<double>(window - 1);
                        variance += weights.weights()[i] * weights.weights()[j] * cov;
                    }
                }
                scale_part = std::max(std::sqrt(std::max(variance, 0.0)), kSigmaFloor);
                break;
            }
            case Model::simple_sum: {
                // Unweighted sum of stand-alone loss VaRs; folded into the
                // common -mean - scale * z form below.
                for (std::size_t i = 0; i < n_assets; ++i) {
                    mean_part += means[i];
                    scale_part += sds[i];
                }
                break;
            }
        }

        for (std::size_t a = 0; a < n_alphas; ++a)
            report.records[a].var_path[day] = -mean_part - scale_part * z[a];

        double loss = 0.0;
        for (std::size_t i = 0; i < n_assets; ++i)
            loss -= weights.weights()[i] * asset_returns[i][t];
        report.realized_losses[day] = loss;
    }

    for (std::size_t a = 0; a < n_alphas; ++a) {
        std::int64_t count = 0;
        for (std::size_t day = 0; day < test_days; ++day)
            if (report.realized_losses[day] > report.records[a].var_path[day]) ++count;
        report.records[a].exceptions = count;
        report.records[a].kupiec =
            kupiec_test(static_cast<std::int64_t>(test_days), count, config.alphas[a]);
    }
    return report;
}

}  // namespace wbr
