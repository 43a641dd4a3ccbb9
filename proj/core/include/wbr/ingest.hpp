#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wbr/errors.hpp"

namespace wbr {

/// Daily closing prices for one symbol. Dates are ISO-8601 strings
/// (YYYY-MM-DD), strictly increasing; closes are strictly positive.
class PriceSeries {
public:
    PriceSeries(std::string symbol, std::vector<std::string> dates, std::vector<double> closes);

    const std::string& symbol() const { return symbol_; }
    const std::vector<std::string>& dates() const { return dates_; }
    const std::vector<double>& closes() const { return closes_; }
    std::size_t size() const { return dates_.size(); }

private:
    std::string symbol_;
    std::vector<std::string> dates_;
    std::vector<double> closes_;
};

/// Log-returns for one symbol; one fewer entry than the price series it
/// came from, each stamped with the date the return realized.
class ReturnSeries {
public:
    ReturnSeries(std::string symbol, std::vector<std::string> dates, std::vector<double> values);

    const std::string& symbol() const { return symbol_; }
    const std::vector<std::string>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    std::string symbol_;
    std::vector<std::string> dates_;
    std::vector<double> values_;
};

struct DescriptiveStats {
    double mean = 0.0;
    double annualized_mean = 0.0;  // exp(mean * trading_days) - 1
    double sd = 0.0;               // n-1 denominator
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    // Standardized third/fourth central moments; absent for degenerate
    // (zero-variance) series.
    std::optional<double> skewness;
    std::optional<double> excess_kurtosis;
};

/// Loads a CSV of `date,close` rows (header required, ISO dates). Rows are
/// sorted by date; duplicate dates and nonpositive closes are rejected.
/// The symbol defaults to the file stem.
/// Throws ParseError (with the 1-based line number) on malformed rows and
/// DataError on invariant violations.
PriceSeries load_prices(const std::filesystem::path& path, std::string symbol = "");

/// value_t = ln(close_{t+1} / close_t). Throws DataError when the series
/// has fewer than two prices.
ReturnSeries log_returns(const PriceSeries& prices);

/// Sample moments of a return series. Throws DataError when fewer than two
/// observations are available.
DescriptiveStats describe(const ReturnSeries& returns, int trading_days = 252);

struct SplitSeries {
    ReturnSeries sample;
    ReturnSeries test;
};

/// First `window` observations as the sample period, remainder as the test
/// period. Throws DataError unless the series is longer than the window.
SplitSeries split_periods(const ReturnSeries& returns, std::size_t window);

/// Multi-asset log-returns on the inner join of the price dates.
struct AlignedReturns {
    std::vector<std::string> symbols;
    std::vector<std::string> dates;            // return dates, shared by all assets
    std::vector<std::vector<double>> values;   // [asset][day]
    std::size_t dropped_dates = 0;             // price rows discarded by the join
};

/// Inner-joins the price series on dates, then computes log-returns per
/// asset on the joined closes. Unmatched dates are dropped and counted.
AlignedReturns aligned_log_returns(const std::vector<PriceSeries>& series);

}  // namespace wbr
