#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <doctest.h>

#include "wbr/ingest.hpp"

using wbr::DataError;
using wbr::ParseError;
using wbr::PriceSeries;
using wbr::ReturnSeries;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("wbr_ingest_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p;
}

std::string iso_date(int serial) {
    // Synthetic strictly increasing dates; month lengths capped at 28.
    const int year = 2000 + serial / 336;
    const int month = 1 + (serial / 28) % 12;
    const int day = 1 + serial % 28;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

}  // namespace

TEST_CASE("load_prices reads a minimal file") {
    TempDir dir;
    const auto p = write_file(dir.path, "ndx.csv", "date,close\n2020-01-02,100\n2020-01-03,101\n");
    const PriceSeries series = wbr::load_prices(p);
    CHECK(series.size() == 2);
    CHECK(series.symbol() == "ndx");
    CHECK(series.dates().front() == "2020-01-02");
    CHECK(series.closes().back() == 101.0);
}

TEST_CASE("load_prices sorts rows into canonical order") {
    TempDir dir;
    const auto sorted = write_file(dir.path, "a.csv",
                                   "date,close\n2020-01-02,100\n2020-01-03,101\n2020-01-06,99\n");
    const auto shuffled = write_file(dir.path, "b.csv",
                                     "date,close\n2020-01-06,99\n2020-01-02,100\n2020-01-03,101\n");
    const PriceSeries a = wbr::load_prices(sorted);
    const PriceSeries b = wbr::load_prices(shuffled);
    CHECK(a.dates() == b.dates());
    CHECK(a.closes() == b.closes());
}

TEST_CASE("load_prices rejects bad rows with positions") {
    TempDir dir;
    const auto zero = write_file(dir.path, "zero.csv", "date,close\n2020-01-02,0\n");
    CHECK_THROWS_WITH_AS(wbr::load_prices(zero), doctest::Contains("line 2"), DataError);

    const auto dup = write_file(dir.path, "dup.csv",
                                "date,close\n2020-01-02,100\n2020-01-02,101\n");
    CHECK_THROWS_WITH_AS(wbr::load_prices(dup), doctest::Contains("2020-01-02"), DataError);

    const auto bad_number =
        write_file(dir.path, "num.csv", "date,close\n2020-01-02,100\n2020-01-03,abc\n");
    try {
        wbr::load_prices(bad_number);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    const auto bad_date = write_file(dir.path, "date.csv", "date,close\n2020-13-02,100\n");
    CHECK_THROWS_AS(wbr::load_prices(bad_date), ParseError);

    const auto bad_header = write_file(dir.path, "hdr.csv", "time,price\n2020-01-02,100\n");
    CHECK_THROWS_AS(wbr::load_prices(bad_header), ParseError);

    CHECK_THROWS_AS(wbr::load_prices(dir.path / "missing.csv"), DataError);
}

TEST_CASE("load_prices tolerates blank lines and CRLF endings") {
    TempDir dir;
    const auto p = write_file(dir.path, "crlf.csv",
                              "date,close\r\n2020-01-02,100\r\n\r\n2020-01-03,101\r\n");
    CHECK(wbr::load_prices(p).size() == 2);
}

TEST_CASE("log_returns") {
    const PriceSeries flat("x", {"2020-01-02", "2020-01-03"}, {100.0, 100.0});
    CHECK(wbr::log_returns(flat).values() == std::vector<double>{0.0});

    const PriceSeries up("x", {"2020-01-02", "2020-01-03"}, {100.0, 110.0});
    CHECK(std::abs(wbr::log_returns(up).values()[0] - 0.0953101798) < 1e-9);
    CHECK(wbr::log_returns(up).dates() == std::vector<std::string>{"2020-01-03"});

    const PriceSeries lone("x", {"2020-01-02"}, {100.0});
    CHECK_THROWS_AS(wbr::log_returns(lone), DataError);
}

TEST_CASE("a 2972-price series yields 2971 returns") {
    std::vector<std::string> dates;
    std::vector<double> closes;
    std::mt19937 rng(5);
    std::normal_distribution<double> step(0.0, 0.01);
    double price = 500.0;
    for (int i = 0; i < 2972; ++i) {
        dates.push_back(iso_date(i));
        closes.push_back(price);
        price *= std::exp(step(rng));
    }
    const ReturnSeries returns = wbr::log_returns(PriceSeries("x", dates, closes));
    CHECK(returns.size() == 2971);
    const auto split = wbr::split_periods(returns, 750);
    CHECK(split.sample.size() == 750);
    CHECK(split.test.size() == 2221);
}

TEST_CASE("describe moments") {
    // Symmetric two-point series.
    const ReturnSeries sym("x", {"2020-01-02", "2020-01-03"}, {0.01, -0.01});
    const auto s = wbr::describe(sym);
    CHECK(std::abs(s.mean) < 1e-18);
    CHECK(s.min == -0.01);
    CHECK(s.max == 0.01);
    CHECK(std::abs(s.median) < 1e-18);
    REQUIRE(s.skewness.has_value());
    CHECK(std::abs(*s.skewness) < 1e-12);

    // Constant series: degenerate higher moments are reported as absent.
    const ReturnSeries flat("x", {"2020-01-02", "2020-01-03", "2020-01-06"}, {0.004, 0.004, 0.004});
    const auto f = wbr::describe(flat);
    CHECK(f.sd == 0.0);
    CHECK_FALSE(f.skewness.has_value());
    CHECK_FALSE(f.excess_kurtosis.has_value());

    CHECK_THROWS_AS(wbr::describe(ReturnSeries("x", {"2020-01-02"}, {0.01})), DataError);
}

TEST_CASE("annualized mean uses compounded trading days") {
    // A series with daily mean 0.00038 annualizes near the published
    // 10.141% (the table's extra digits imply an unrounded daily mean).
    const ReturnSeries r("x", {"2020-01-02", "2020-01-03"}, {0.00038, 0.00038});
    const auto s = wbr::describe(r, 252);
    CHECK(std::abs(s.annualized_mean - (std::exp(0.00038 * 252.0) - 1.0)) < 1e-15);
    CHECK(std::abs(s.annualized_mean - 0.10141) < 0.0015);
}

TEST_CASE("split_periods counts") {
    std::vector<std::string> dates;
    std::vector<double> values;
    for (int i = 0; i < 2663; ++i) {
        dates.push_back(iso_date(i));
        values.push_back(0.001 * (i % 7));
    }
    const ReturnSeries r("x", dates, values);
    const auto split = wbr::split_periods(r, 2264);
    CHECK(split.sample.size() == 2264);
    CHECK(split.test.size() == 399);

    const auto boundary = wbr::split_periods(r, 2662);
    CHECK(boundary.test.size() == 1);

    CHECK_THROWS_AS(wbr::split_periods(r, 2663), DataError);
    CHECK_THROWS_AS(wbr::split_periods(r, 5000), DataError);
}

TEST_CASE("aligned_log_returns inner-joins on dates") {
    const PriceSeries a("a", {"2020-01-02", "2020-01-03", "2020-01-06", "2020-01-07"},
                        {100.0, 101.0, 102.0, 103.0});
    const PriceSeries b("b", {"2020-01-02", "2020-01-06", "2020-01-07", "2020-01-08"},
                        {50.0, 51.0, 52.0, 53.0});
    const auto aligned = wbr::aligned_log_returns({a, b});
    CHECK(aligned.symbols == std::vector<std::string>{"a", "b"});
    // Joined dates: 01-02, 01-06, 01-07 -> two returns.
    CHECK(aligned.dates == std::vector<std::string>{"2020-01-06", "2020-01-07"});
    CHECK(aligned.dropped_dates == 2);
    REQUIRE(aligned.values.size() == 2);
    CHECK(std::abs(aligned.values[0][0] - std::log(102.0 / 100.0)) < 1e-15);
    CHECK(std::abs(aligned.values[1][1] - std::log(52.0 / 51.0)) < 1e-15);

    const PriceSeries c("c", {"2021-01-04"}, {10.0});
    CHECK_THROWS_AS(wbr::aligned_log_returns({a, c}), DataError);
}
