#include "wbr/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <utility>

namespace wbr {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// YYYY-MM-DD with a light range check; lexicographic order on valid dates
// is chronological order.
bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

PriceSeries::PriceSeries(std::string symbol, std::vector<std::string> dates,
                         std::vector<double> closes)
    : symbol_(std::move(symbol)), dates_(std::move(dates)), closes_(std::move(closes)) {
    if (dates_.size() != closes_.size())
        throw DataError("PriceSeries: dates and closes lengths differ");
    if (dates_.empty())
        throw DataError("PriceSeries: series must be nonempty");
    for (std::size_t i = 0; i < dates_.size(); ++i) {
        if (!is_iso_date(dates_[i]))
            throw DataError("PriceSeries: invalid date '" + dates_[i] + "'");
        if (!(closes_[i] > 0.0))
            throw DataError("PriceSeries: nonpositive close on " + dates_[i]);
        if (i > 0 && !(dates_[i - 1] < dates_[i]))
            throw DataError("PriceSeries: dates must be strictly increasing (" + dates_[i] + ")");
    }
}

ReturnSeries::ReturnSeries(std::string symbol, std::vector<std::string> dates,
                           std::vector<double> values)
    : symbol_(std::move(symbol)), dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size())
        throw DataError("ReturnSeries: dates and values lengths differ");
}

PriceSeries load_prices(const std::filesystem::path& path, std::string symbol) {
    std::ifstream in(path);
    if (!in)
        throw DataError("load_prices: cannot open " + path.string());
    if (symbol.empty()) symbol = path.stem().string();

    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line))
        throw ParseError("load_prices: " + path.string() + " is empty", 1);
    ++line_no;
    const auto header = split_csv_line(line);
    if (header.size() != 2 || to_lower(header[0]) != "date" || to_lower(header[1]) != "close")
        throw ParseError("load_prices: expected header 'date,close' in " + path.string(), line_no);

    std::vector<std::pair<std::string, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw ParseError("load_prices: expected 2 fields at line " + std::to_string(line_no) +
                                 " of " + path.string(),
                             line_no);
        if (!is_iso_date(fields[0]))
            throw ParseError("load_prices: invalid date '" + fields[0] + "' at line " +
                                 std::to_string(line_no) + " of " + path.string(),
                             line_no);
        double close = 0.0;
        if (!parse_double(fields[1], close))
            throw ParseError("load_prices: invalid close '" + fields[1] + "' at line " +
                                 std::to_string(line_no) + " of " + path.string(),
                             line_no);
        if (!(close > 0.0))
            throw DataError("load_prices: nonpositive close at line " + std::to_string(line_no) +
                            " of " + path.string());
        rows.emplace_back(fields[0], close);
    }
    if (rows.empty())
        throw DataError("load_prices: no data rows in " + path.string());

    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw DataError("load_prices: duplicate date " + rows[i].first + " in " +
                            path.string());

    std::vector<std::string> dates;
    std::vector<double> closes;
    dates.reserve(rows.size());
    closes.reserve(rows.size());
    for (auto& [date, close] : rows) {
        dates.push_back(std::move(date));
        closes.push_back(close);
    }
    return PriceSeries(std::move(symbol), std::move(dates), std::move(closes));
}

ReturnSeries log_returns(const PriceSeries& prices) {
    if (prices.size() < 2)
        throw DataError("log_returns: need at least two prices");
    std::vector<std::string> dates(prices.dates().begin() + 1, prices.dates().end());
    std::vector<double> values;
    values.reserve(prices.size() - 1);
    for (std::size_t t = 0; t + 1 < prices.size(); ++t)
        values.push_back(std::log(prices.closes()[t + 1] / prices.closes()[t]));
    return ReturnSeries(prices.symbol(), std::move(dates), std::move(values));
}

DescriptiveStats describe(const ReturnSeries& returns, int trading_days) {
    const std::size_t n = returns.size();
    if (n < 2)
        throw DataError("describe: need at least two observations");
    if (trading_days < 1)
        throw std::invalid_argument("describe: trading_days must be positive");

    const std::vector<double>& x = returns.values();
    const double nd = static_cast<double>(n);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / nd;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double sd = std::sqrt(m2 / (nd - 1.0));
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;

    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    const double median = (n % 2 == 1) ? sorted[n / 2]
                                       : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    DescriptiveStats stats;
    stats.mean = mean;
    stats.annualized_mean = std::exp(mean * static_cast<double>(trading_days)) - 1.0;
    stats.sd = sd;
    stats.min = sorted.front();
    stats.median = median;
    stats.max = sorted.back();
    if (m2 > 0.0) {
        stats.skewness = m3 / std::pow(m2, 1.5);
        stats.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return stats;
}

SplitSeries split_periods(const ReturnSeries& returns, std::size_t window) {
    if (window == 0)
        throw std::invalid_argument("split_periods: window must be positive");
    if (returns.size() <= window)
        throw DataError("split_periods: series has " + std::to_string(returns.size()) +
                        " observations, need more than the window " + std::to_string(window));
    std::vector<std::string> sample_dates(returns.dates().begin(),
                                          returns.dates().begin() + window);
    std::vector<double> sample_values(returns.values().begin(),
                                      returns.values().begin() + window);
    std::vector<std::string> test_dates(returns.dates().begin() + window, returns.dates().end());
    std::vector<double> test_values(returns.values().begin() + window, returns.values().end());
    return SplitSeries{
        ReturnSeries(returns.symbol(), std::move(sample_dates), std::move(sample_values)),
        ReturnSeries(returns.symbol(), std::move(test_dates), std::move(test_values))};
}

AlignedReturns aligned_log_returns(const std::vector<PriceSeries>& series) {
    if (series.empty())
        throw DataError("aligned_log_returns: at least one series required");

    // Intersection of the (sorted) date vectors.
    std::vector<std::string> joined = series.front().dates();
    for (std::size_t i = 1; i < series.size(); ++i) {
        std::vector<std::string> next;
        std::set_intersection(joined.begin(), joined.end(), series[i].dates().begin(),
                              series[i].dates().end(), std::back_inserter(next));
        joined = std::move(next);
    }
    if (joined.size() < 2)
        throw DataError("aligned_log_returns: fewer than two shared dates across series");

    AlignedReturns out;
    out.dates.assign(joined.begin() + 1, joined.end());
    for (const PriceSeries& s : series) {
        out.symbols.push_back(s.symbol());
        out.dropped_dates += s.size() - joined.size();

        std::vector<double> closes;
        closes.reserve(joined.size());
        std::size_t pos = 0;
        for (const std::string& date : joined) {
            while (s.dates()[pos] != date) ++pos;
            closes.push_back(s.closes()[pos]);
        }
        std::vector<double> values;
        values.reserve(closes.size() - 1);
        for (std::size_t t = 0; t + 1 < closes.size(); ++t)
            values.push_back(std::log(closes[t + 1] / closes[t]));
        out.values.push_back(std::move(values));
    }
    return out;
}

}  // namespace wbr
