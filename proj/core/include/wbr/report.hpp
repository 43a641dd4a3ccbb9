#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wbr/backtest.hpp"

namespace wbr {

enum class OutputFormat { json, csv };

/// One serialized row per (model, alpha) pair: the machine form of the
/// backtest summary tables.
struct BacktestRow {
    double alpha = 0.0;
    double expected_exceptions = 0.0;  // test_days * alpha
    double var_level_last = 0.0;       // final forecast in the path
    double var_level_mean = 0.0;       // mean forecast over the path
    std::int64_t exceptions = 0;
    double lr = 0.0;
    double p_value = 0.0;
    bool rejected = false;
};

std::vector<BacktestRow> tabulate(const BacktestReport& report);

/// Fixed 10-significant-digit rendering used for every float that reaches
/// an output file, so identical runs produce identical bytes.
std::string format_double(double value);

std::string json_escape(const std::string& s);

/// Ordered key/value pairs echoed into every report so runs are
/// self-describing.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// JSON document {"config": {...}, "rows": [...]} with fixed field order.
/// Echo values are written verbatim (callers quote strings themselves).
void write_rows_json(std::ostream& out, const std::vector<BacktestRow>& rows,
                     const ConfigEcho& echo);

/// CSV with `# key=value` comment lines for the config echo, then a header
/// row and one line per row.
void write_rows_csv(std::ostream& out, const std::vector<BacktestRow>& rows,
                    const ConfigEcho& echo);

}  // namespace wbr
