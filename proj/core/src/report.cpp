#include "wbr/report.hpp"

#include <cstdio>
#include <numeric>

namespace wbr {

std::vector<BacktestRow> tabulate(const BacktestReport& report) {
    std::vector<BacktestRow> rows;
    rows.reserve(report.records.size());
    for (const AlphaRecord& record : report.records) {
        BacktestRow row;
        row.alpha = record.alpha;
        row.expected_exceptions = static_cast<double>(report.test_days) * record.alpha;
        row.var_level_last = record.var_path.empty() ? 0.0 : record.var_path.back();
        row.var_level_mean =
            record.var_path.empty()
                ? 0.0
                : std::accumulate(record.var_path.begin(), record.var_path.end(), 0.0) /
                      static_cast<double>(record.var_path.size());
        row.exceptions = record.exceptions;
        row.lr = record.kupiec.lr;
        row.p_value = record.kupiec.p_value;
        row.rejected = record.kupiec.rejected;
        rows.push_back(row);
    }
    return rows;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

namespace {

void write_config_json(std::ostream& out, const ConfigEcho& echo) {
    out << "  \"config\": {";
    for (std::size_t i = 0; i < echo.size(); ++i) {
        if (i > 0) out << ", ";
        out << '"' << json_escape(echo[i].first) << "\": " << echo[i].second;
    }
    out << "}";
}

}  // namespace

void write_rows_json(std::ostream& out, const std::vector<BacktestRow>& rows,
                     const ConfigEcho& echo) {
    out << "{\n";
    write_config_json(out, echo);
    out << ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BacktestRow& r = rows[i];
        out << "    {\"alpha\": " << format_double(r.alpha)
            << ", \"expected_exceptions\": " << format_double(r.expected_exceptions)
            << ", \"var_level_last\": " << format_double(r.var_level_last)
            << ", \"var_level_mean\": " << format_double(r.var_level_mean)
            << ", \"exceptions\": " << r.exceptions
            << ", \"lr\": " << format_double(r.lr)
            << ", \"p_value\": " << format_double(r.p_value)
            << ", \"rejected\": " << (r.rejected ? "true" : "false") << "}"
            << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

void write_rows_csv(std::ostream& out, const std::vector<BacktestRow>& rows,
                    const ConfigEcho& echo) {
    for (const auto& [key, value] : echo) out << "# " << key << "=" << value << "\n";
    out << "alpha,expected_exceptions,var_level_last,var_level_mean,exceptions,lr,p_value,"
           "rejected\n";
    for (const BacktestRow& r : rows) {
        out << format_double(r.alpha) << ',' << format_double(r.expected_exceptions) << ','
            << format_double(r.var_level_last) << ',' << format_double(r.var_level_mean) << ','
            << r.exceptions << ',' << format_double(r.lr) << ',' << format_double(r.p_value)
            << ',' << (r.rejected ? "true" : "false") << "\n";
    }
}

}  // namespace wbr
