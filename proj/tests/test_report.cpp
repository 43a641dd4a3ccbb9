#include <sstream>

#include <doctest.h>

#include "wbr/report.hpp"

using wbr::BacktestReport;
using wbr::BacktestRow;

namespace {

BacktestReport tiny_report() {
    BacktestReport report;
    report.model = wbr::Model::wb_normal;
    report.window = 5;
    report.observations = 9;
    report.test_days = 4;
    report.realized_losses = {0.01, -0.02, 0.03, 0.0};
    wbr::AlphaRecord record;
    record.alpha = 0.1;
    record.var_path = {0.02, 0.025, 0.02, 0.03};
    record.exceptions = 1;
    record.kupiec = wbr::kupiec_test(4, 1, 0.1);
    report.records.push_back(record);
    return report;
}

}  // namespace

TEST_CASE("tabulate derives row fields from the report") {
    const auto rows = wbr::tabulate(tiny_report());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].alpha == 0.1);
    CHECK(rows[0].expected_exceptions == doctest::Approx(0.4));
    CHECK(rows[0].var_level_last == 0.03);
    CHECK(rows[0].var_level_mean == doctest::Approx((0.02 + 0.025 + 0.02 + 0.03) / 4.0));
    CHECK(rows[0].exceptions == 1);
    CHECK(rows[0].p_value == wbr::kupiec_test(4, 1, 0.1).p_value);
}

TEST_CASE("format_double pins ten significant digits") {
    CHECK(wbr::format_double(0.1) == "0.1");
    CHECK(wbr::format_double(1.0 / 3.0) == "0.3333333333");
    CHECK(wbr::format_double(2.0) == "2");
    CHECK(wbr::format_double(-0.0318799181) == "-0.0318799181");
    CHECK(wbr::format_double(9.1306553e-06) == "9.1306553e-06");
}

TEST_CASE("json escaping") {
    CHECK(wbr::json_escape("plain") == "plain");
    CHECK(wbr::json_escape("a\"b\\c") == "a\\\"b\\\\c");
    CHECK(wbr::json_escape("line\nbreak") == "line\\nbreak");
}

TEST_CASE("report writers are deterministic") {
    const auto rows = wbr::tabulate(tiny_report());
    const wbr::ConfigEcho echo{{"command", "\"backtest\""}, {"window", "5"}};

    std::ostringstream json1, json2, csv1, csv2;
    wbr::write_rows_json(json1, rows, echo);
    wbr::write_rows_json(json2, rows, echo);
    wbr::write_rows_csv(csv1, rows, echo);
    wbr::write_rows_csv(csv2, rows, echo);
    CHECK(json1.str() == json2.str());
    CHECK(csv1.str() == csv2.str());

    CHECK(json1.str().find("\"config\": {\"command\": \"backtest\", \"window\": 5}") !=
          std::string::npos);
    CHECK(json1.str().find("\"alpha\": 0.1") != std::string::npos);
    CHECK(csv1.str().find("# command=\"backtest\"") != std::string::npos);
    CHECK(csv1.str().find("alpha,expected_exceptions,var_level_last,var_level_mean,exceptions,"
                          "lr,p_value,rejected") != std::string::npos);
}
