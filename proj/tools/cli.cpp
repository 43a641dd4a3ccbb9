#include "cli.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "wbr/errors.hpp"
#include "wbr/ingest.hpp"

namespace wbr::cli {

namespace {

std::string quoted(const std::string& s) {
    return '"' + json_escape(s) + '"';
}

std::string render_list(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(values[i]);
    }
    return out + "]";
}

std::string render_inputs(const RunConfig& config) {
    std::string out = "[";
    for (std::size_t i = 0; i < config.inputs.size(); ++i) {
        if (i > 0) out += ", ";
        out += quoted(config.inputs[i].first + "=" + config.inputs[i].second);
    }
    return out + "]";
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream file(dir / name, std::ios::binary);
    if (!file)
        throw DataError("cannot write " + (dir / name).string());
    return file;
}

std::string output_name(const std::string& base, OutputFormat format) {
    return base + (format == OutputFormat::json ? ".json" : ".csv");
}

std::vector<PriceSeries> load_inputs(const RunConfig& config) {
    std::vector<PriceSeries> series;
    series.reserve(config.inputs.size());
    for (const auto& [symbol, path] : config.inputs)
        series.push_back(load_prices(path, symbol));
    return series;
}

PortfolioSpec resolve_weights(const RunConfig& config, std::size_t n_assets) {
    if (config.weights.empty()) return PortfolioSpec::equal(n_assets);
    if (config.weights.size() != n_assets)
        throw std::invalid_argument("expected one weight per asset");
    return PortfolioSpec(config.weights);
}

// Numeric CSV matrix, no header: one row per line.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("invalid number '" + cell + "' at line " +
                                     std::to_string(line_no) + " of " + path.string(),
                                 line_no);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged matrix row at line " + std::to_string(line_no) + " of " +
                                 path.string(),
                             line_no);
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw DataError("empty matrix file " + path.string());
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

std::vector<double> parse_comma_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    return values;
}

struct StatsRecord {
    std::string symbol;
    std::string period;
    std::size_t observations = 0;
    DescriptiveStats stats;
};

void write_stats_json(std::ostream& out, const std::vector<StatsRecord>& records,
                      const ConfigEcho& echo) {
    out << "{\n  \"config\": {";
    for (std::size_t i = 0; i < echo.size(); ++i) {
        if (i > 0) out << ", ";
        out << '"' << json_escape(echo[i].first) << "\": " << echo[i].second;
    }
    out << "},\n  \"stats\": [\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const StatsRecord& r = records[i];
        out << "    {\"symbol\": " << quoted(r.symbol) << ", \"period\": " << quoted(r.period)
            << ", \"observations\": " << r.observations
            << ", \"mean\": " << format_double(r.stats.mean)
            << ", \"annualized_mean\": " << format_double(r.stats.annualized_mean)
            << ", \"sd\": " << format_double(r.stats.sd)
            << ", \"min\": " << format_double(r.stats.min)
            << ", \"median\": " << format_double(r.stats.median)
            << ", \"max\": " << format_double(r.stats.max) << ", \"skewness\": "
            << (r.stats.skewness ? format_double(*r.stats.skewness) : "null")
            << ", \"excess_kurtosis\": "
            << (r.stats.excess_kurtosis ? format_double(*r.stats.excess_kurtosis) : "null")
            << "}" << (i + 1 < records.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRecord>& records,
                     const ConfigEcho& echo) {
    for (const auto& [key, value] : echo) out << "# " << key << "=" << value << "\n";
    out << "symbol,period,observations,mean,annualized_mean,sd,min,median,max,skewness,"
           "excess_kurtosis\n";
    for (const StatsRecord& r : records) {
        out << r.symbol << ',' << r.period << ',' << r.observations << ','
            << format_double(r.stats.mean) << ',' << format_double(r.stats.annualized_mean)
            << ',' << format_double(r.stats.sd) << ',' << format_double(r.stats.min) << ','
            << format_double(r.stats.median) << ',' << format_double(r.stats.max) << ','
            << (r.stats.skewness ? format_double(*r.stats.skewness) : "") << ','
            << (r.stats.excess_kurtosis ? format_double(*r.stats.excess_kurtosis) : "") << "\n";
    }
}

int guard(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const NotSpdError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guard(err, [&]() {
        if (config.inputs.empty())
            throw std::invalid_argument("stats: at least one --input required");

        std::vector<StatsRecord> records;
        for (const PriceSeries& prices : load_inputs(config)) {
            const ReturnSeries returns = log_returns(prices);
            if (config.window) {
                const SplitSeries split = split_periods(returns, *config.window);
                records.push_back({returns.symbol(), "sample", split.sample.size(),
                                   describe(split.sample, config.trading_days)});
                records.push_back({returns.symbol(), "test", split.test.size(),
                                   describe(split.test, config.trading_days)});
            } else {
                records.push_back({returns.symbol(), "full", returns.size(),
                                   describe(returns, config.trading_days)});
            }
        }

        ConfigEcho echo;
        echo.emplace_back("command", quoted("stats"));
        echo.emplace_back("inputs", render_inputs(config));
        if (config.window) echo.emplace_back("window", std::to_string(*config.window));
        echo.emplace_back("trading_days", std::to_string(config.trading_days));

        const std::string name = output_name("stats", config.format);
        std::ofstream file = open_output(config.out_dir, name);
        if (config.format == OutputFormat::json)
            write_stats_json(file, records, echo);
        else
            write_stats_csv(file, records, echo);
        out << "wrote " << (config.out_dir / name).string() << " (" << records.size()
            << " records)\n";
        return kExitOk;
    });
}

int cmd_backtest(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guard(err, [&]() {
        if (config.inputs.empty())
            throw std::invalid_argument("backtest: at least one --input required");

        const AlignedReturns aligned = aligned_log_returns(load_inputs(config));

        BacktestConfig bt;
        bt.window = config.window.value_or(750);
        bt.alphas = config.alphas;
        bt.model = config.model;
        bt.ewma.zeta = config.zeta;
        bt.weights = resolve_weights(config, aligned.values.size());
        const BacktestReport report = rolling_backtest(aligned.values, bt);

        ConfigEcho echo;
        echo.emplace_back("command", quoted("backtest"));
        echo.emplace_back("inputs", render_inputs(config));
        echo.emplace_back("model", quoted(std::string(model_name(config.model))));
        echo.emplace_back("window", std::to_string(bt.window));
        echo.emplace_back("alphas", render_list(bt.alphas));
        if (config.model == Model::wb_normal_star)
            echo.emplace_back("zeta", format_double(config.zeta));
        echo.emplace_back("weights", render_list(bt.weights->weights()));
        echo.emplace_back("convention", quoted("loss"));
        echo.emplace_back("observations", std::to_string(report.observations));
        echo.emplace_back("test_days", std::to_string(report.test_days));
        echo.emplace_back("first_date", quoted(aligned.dates.front()));
        echo.emplace_back("last_date", quoted(aligned.dates.back()));
        echo.emplace_back("dropped_dates", std::to_string(aligned.dropped_dates));

        const std::vector<BacktestRow> rows = tabulate(report);
        const std::string report_name = output_name("report", config.format);
        {
            std::ofstream file = open_output(config.out_dir, report_name);
            if (config.format == OutputFormat::json)
                write_rows_json(file, rows, echo);
            else
                write_rows_csv(file, rows, echo);
        }

        // Per-day forecasts next to the realized losses, for plotting.
        const std::string path_name = output_name("var_path", config.format);
        {
            std::ofstream file = open_output(config.out_dir, path_name);
            const std::size_t offset = aligned.dates.size() - report.test_days;
            if (config.format == OutputFormat::json) {
                file << "{\n  \"config\": {";
                for (std::size_t i = 0; i < echo.size(); ++i) {
                    if (i > 0) file << ", ";
                    file << '"' << json_escape(echo[i].first) << "\": " << echo[i].second;
                }
                file << "},\n  \"days\": [\n";
                for (std::size_t d = 0; d < report.test_days; ++d) {
                    file << "    {\"date\": " << quoted(aligned.dates[offset + d])
                         << ", \"realized_loss\": " << format_double(report.realized_losses[d]);
                    for (const AlphaRecord& record : report.records)
                        file << ", \"var_" << format_double(record.alpha)
                             << "\": " << format_double(record.var_path[d]);
                    file << "}" << (d + 1 < report.test_days ? "," : "") << "\n";
                }
                file << "  ]\n}\n";
            } else {
                for (const auto& [key, value] : echo) file << "# " << key << "=" << value << "\n";
                file << "date,realized_loss";
                for (const AlphaRecord& record : report.records)
                    file << ",var_" << format_double(record.alpha);
                file << "\n";
                for (std::size_t d = 0; d < report.test_days; ++d) {
                    file << aligned.dates[offset + d] << ','
                         << format_double(report.realized_losses[d]);
                    for (const AlphaRecord& record : report.records)
                        file << ',' << format_double(record.var_path[d]);
                    file << "\n";
                }
            }
        }

        for (const BacktestRow& row : rows)
            out << "alpha=" << format_double(row.alpha) << " exceptions=" << row.exceptions << "/"
                << report.test_days << " expected=" << format_double(row.expected_exceptions)
                << " p_value=" << format_double(row.p_value)
                << " rejected=" << (row.rejected ? "yes" : "no") << "\n";
        out << "wrote " << (config.out_dir / report_name).string() << "\n";
        out << "wrote " << (config.out_dir / path_name).string() << "\n";
        return kExitOk;
    });
}

int cmd_var(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guard(err, [&]() {
        const bool explicit_moments = !config.means.empty() || !config.sds.empty();
        if (explicit_moments && !config.inputs.empty())
            throw std::invalid_argument("var: use either --input or --mean/--sd, not both");
        if (explicit_moments && config.means.size() != config.sds.size())
            throw std::invalid_argument("var: --mean and --sd must come in pairs");
        if (!explicit_moments && config.inputs.empty())
            throw std::invalid_argument("var: provide --input files or --mean/--sd pairs");

        std::vector<double> means = config.means;
        std::vector<double> sds = config.sds;
        std::optional<Eigen::MatrixXd> cov;
        std::vector<std::string> symbols;

        if (!explicit_moments) {
            const AlignedReturns aligned = aligned_log_returns(load_inputs(config));
            symbols = aligned.symbols;
            const std::size_t n = aligned.values.size();
            const std::size_t days = aligned.values.front().size();
            if (days < 2) throw DataError("var: need at least two aligned returns");
            means.resize(n);
            sds.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (double v : aligned.values[i]) acc += v;
                means[i] = acc / static_cast<double>(days);
            }
            Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < days; ++k)
                        acc += (aligned.values[i][k] - means[i]) *
                               (aligned.values[j][k] - means[j]);
                    c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        acc / static_cast<double>(days - 1);
                }
            cov = c;
            for (std::size_t i = 0; i < n; ++i)
                sds[i] = std::sqrt(c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
        }

        const std::size_t n_assets = means.size();
        for (double s : sds)
            if (!(s > 0.0)) throw std::invalid_argument("var: scales must be positive");
        const PortfolioSpec weights = resolve_weights(config, n_assets);

        const StandardProfile gaussian = StandardProfile::gaussian();
        std::vector<LocationScale> members;
        members.reserve(n_assets);
        for (std::size_t i = 0; i < n_assets; ++i)
            members.emplace_back(gaussian, means[i], sds[i]);
        const WeightedEnsemble ensemble(members, weights.weights());

        ConfigEcho echo;
        echo.emplace_back("command", quoted("var"));
        if (!config.inputs.empty()) echo.emplace_back("inputs", render_inputs(config));
        if (explicit_moments) {
            echo.emplace_back("means", render_list(means));
            echo.emplace_back("sds", render_list(sds));
        }
        echo.emplace_back("alphas", render_list(config.alphas));
        echo.emplace_back("weights", render_list(weights.weights()));
        echo.emplace_back(
            "convention",
            quoted(config.convention == Convention::loss ? "loss" : "quantile"));

        struct VarRow {
            double alpha;
            double wb_var;
            double wb_cvar;
            std::optional<double> varcov;
            double simple_sum;
        };
        std::vector<VarRow> rows;
        Eigen::Map<const Eigen::VectorXd> mean_vec(means.data(),
                                                   static_cast<Eigen::Index>(n_assets));
        for (double alpha : config.alphas) {
            const RiskQuery query{alpha, config.convention};
            VarRow row{};
            row.alpha = alpha;
            row.wb_var = wb_var(ensemble, query);
            row.wb_cvar = wb_cvar(ensemble, query);
            if (cov) row.varcov = varcov_var(mean_vec, *cov, weights, query);
            const double z = gaussian.quantile(alpha);
            std::vector<double> per_asset(n_assets);
            for (std::size_t i = 0; i < n_assets; ++i) {
                const double loss_var = -means[i] - sds[i] * z;
                per_asset[i] = config.convention == Convention::loss ? loss_var : -loss_var;
            }
            row.simple_sum = simple_sum_var(per_asset);
            rows.push_back(row);
        }

        const std::string name = output_name("var", config.format);
        std::ofstream file = open_output(config.out_dir, name);
        if (config.format == OutputFormat::json) {
            file << "{\n  \"config\": {";
            for (std::size_t i = 0; i < echo.size(); ++i) {
                if (i > 0) file << ", ";
                file << '"' << json_escape(echo[i].first) << "\": " << echo[i].second;
            }
            file << "},\n  \"rows\": [\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const VarRow& r = rows[i];
                file << "    {\"alpha\": " << format_double(r.alpha)
                     << ", \"wb_var\": " << format_double(r.wb_var)
                     << ", \"wb_cvar\": " << format_double(r.wb_cvar) << ", \"varcov_var\": "
                     << (r.varcov ? format_double(*r.varcov) : "null")
                     << ", \"simple_sum_var\": " << format_double(r.simple_sum) << "}"
                     << (i + 1 < rows.size() ? "," : "") << "\n";
            }
            file << "  ]\n}\n";
        } else {
            for (const auto& [key, value] : echo) file << "# " << key << "=" << value << "\n";
            file << "alpha,wb_var,wb_cvar,varcov_var,simple_sum_var\n";
            for (const VarRow& r : rows)
                file << format_double(r.alpha) << ',' << format_double(r.wb_var) << ','
                     << format_double(r.wb_cvar) << ','
                     << (r.varcov ? format_double(*r.varcov) : "") << ','
                     << format_double(r.simple_sum) << "\n";
        }

        for (const VarRow& r : rows)
            out << "alpha=" << format_double(r.alpha) << " wb_var=" << format_double(r.wb_var)
                << " wb_cvar=" << format_double(r.wb_cvar) << "\n";
        out << "wrote " << (config.out_dir / name).string() << "\n";
        return kExitOk;
    });
}

int cmd_barycenter(const RunConfig& config, const BarycenterArgs& args, std::ostream& out,
                   std::ostream& err) {
    return guard(err, [&]() {
        const bool multivariate = !args.cov_paths.empty();
        if (multivariate && (!args.means.empty() || !args.sds.empty()))
            throw std::invalid_argument("barycenter: use either --mean/--sd or --cov, not both");

        ConfigEcho echo;
        echo.emplace_back("command", quoted("barycenter"));

        if (!multivariate) {
            if (args.means.empty() || args.means.size() != args.sds.size())
                throw std::invalid_argument("barycenter: --mean and --sd must come in pairs");
            const std::size_t n = args.means.size();
            const PortfolioSpec weights = resolve_weights(config, n);
            const StandardProfile gaussian = StandardProfile::gaussian();
            std::vector<LocationScale> members;
            for (std::size_t i = 0; i < n; ++i)
                members.emplace_back(gaussian, args.means[i], args.sds[i]);
            const LocationScale center = barycenter_1d(WeightedEnsemble(members, weights.weights()));

            echo.emplace_back("means", render_list(args.means));
            echo.emplace_back("sds", render_list(args.sds));
            echo.emplace_back("weights", render_list(weights.weights()));

            const std::string name = output_name("barycenter", config.format);
            std::ofstream file = open_output(config.out_dir, name);
            if (config.format == OutputFormat::json) {
                file << "{\n  \"config\": {";
                for (std::size_t i = 0; i < echo.size(); ++i) {
                    if (i > 0) file << ", ";
                    file << '"' << json_escape(echo[i].first) << "\": " << echo[i].second;
                }
                file << "},\n  \"barycenter\": {\"location\": " << format_double(center.location())
                     << ", \"scale\": " << format_double(center.scale()) << "}\n}\n";
            } else {
                for (const auto& [key, value] : echo) file << "# " << key << "=" << value << "\n";
                file << "field,value\nlocation," << format_double(center.location())
                     << "\nscale," << format_double(center.scale()) << "\n";
            }
            out << "barycenter (" << format_double(center.location()) << ", "
                << format_double(center.scale()) << ")\n";
            return kExitOk;
        }

        std::vector<GaussianMeasureMV> measures;
        for (std::size_t i = 0; i < args.cov_paths.size(); ++i) {
            Eigen::MatrixXd cov = read_matrix_csv(args.cov_paths[i]);
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(cov.rows());
            if (i < args.mean_vectors.size()) {
                const std::vector<double> values = parse_comma_list(args.mean_vectors[i]);
                if (static_cast<Eigen::Index>(values.size()) != cov.rows())
                    throw std::invalid_argument("barycenter: mean vector " + std::to_string(i) +
                                                " does not match covariance dimension");
                mean = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                         static_cast<Eigen::Index>(values.size()));
            }
            measures.emplace_back(std::move(mean), std::move(cov));
        }
        const PortfolioSpec weights = resolve_weights(config, measures.size());
        BarycenterOptions options;
        options.tol = args.tol;
        options.max_iter = args.max_iter;
        options.scheme = args.scheme;
        const MvBarycenter result = barycenter_gaussian_mv(measures, weights.weights(), options);

        echo.emplace_back("covariances", [&] {
            std::string list = "[";
            for (std::size_t i = 0; i < args.cov_paths.size(); ++i) {
                if (i > 0) list += ", ";
                list += quoted(args.cov_paths[i]);
            }
            return list + "]";
        }());
        echo.emplace_back("weights", render_list(weights.weights()));
        echo.emplace_back("tol", format_double(args.tol));
        echo.emplace_back("max_iter", std::to_string(args.max_iter));
        echo.emplace_back("scheme", quoted(args.scheme == FixedPointScheme::interpolation
                                               ? "interpolation"
                                               : "substitution"));

        const Eigen::VectorXd& mean = result.measure.mean();
        const Eigen::MatrixXd& cov = result.measure.covariance();
        const std::string name = output_name("barycenter", config.format);
        std::ofstream file = open_output(config.out_dir, name);
        if (config.format == OutputFormat::json) {
            file << "{\n  \"config\": {";
            for (std::size_t i = 0; i < echo.size(); ++i) {
                if (i > 0) file << ", ";
                file << '"' << json_escape(echo[i].first) << "\": " << echo[i].second;
            }
            file << "},\n  \"barycenter\": {\"mean\": [";
            for (Eigen::Index i = 0; i < mean.size(); ++i)
                file << (i > 0 ? ", " : "") << format_double(mean(i));
            file << "], \"covariance\": [";
            for (Eigen::Index i = 0; i < cov.rows(); ++i) {
                file << (i > 0 ? ", [" : "[");
                for (Eigen::Index j = 0; j < cov.cols(); ++j)
                    file << (j > 0 ? ", " : "") << format_double(cov(i, j));
                file << "]";
            }
            file << "], \"residual\": " << format_double(result.report.residual)
                 << ", \"iterations\": " << result.report.iterations << "}\n}\n";
        } else {
            for (const auto& [key, value] : echo) file << "# " << key << "=" << value << "\n";
            file << "field,value\n";
            for (Eigen::Index i = 0; i < mean.size(); ++i)
                file << "mean_" << i << ',' << format_double(mean(i)) << "\n";
            for (Eigen::Index i = 0; i < cov.rows(); ++i)
                for (Eigen::Index j = 0; j < cov.cols(); ++j)
                    file << "cov_" << i << '_' << j << ',' << format_double(cov(i, j)) << "\n";
            file << "residual," << format_double(result.report.residual) << "\n";
            file << "iterations," << result.report.iterations << "\n";
        }

        out << "barycenter mean [";
        for (Eigen::Index i = 0; i < mean.size(); ++i)
            out << (i > 0 ? ", " : "") << format_double(mean(i));
        out << "]\ncovariance [";
        for (Eigen::Index i = 0; i < cov.rows(); ++i) {
            out << (i > 0 ? ", [" : "[");
            for (Eigen::Index j = 0; j < cov.cols(); ++j)
                out << (j > 0 ? ", " : "") << format_double(cov(i, j));
            out << "]";
        }
        out << "]\nresidual " << format_double(result.report.residual) << " iterations "
            << result.report.iterations << "\n";
        return kExitOk;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wasserstein barycenter risk measures: barycenter VaR/CVaR, classical "
                 "aggregators, and rolling Kupiec backtests"};
    app.require_subcommand(1);

    RunConfig config;
    BarycenterArgs barycenter_args;
    std::vector<std::string> raw_inputs;
    std::string weights_text;
    std::string scheme_name = "interpolation";

    const std::map<std::string, OutputFormat> format_map{{"json", OutputFormat::json},
                                                         {"csv", OutputFormat::csv}};
    const std::map<std::string, Convention> convention_map{{"loss", Convention::loss},
                                                           {"quantile", Convention::quantile}};
    const std::map<std::string, Model> model_map{{"wb_normal", Model::wb_normal},
                                                 {"wb_normal_star", Model::wb_normal_star},
                                                 {"varcov", Model::varcov},
                                                 {"simple_sum", Model::simple_sum}};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out-dir", config.out_dir, "Directory for output files");
        cmd->add_option("--format", config.format, "Output file format")
            ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case));
    };
    auto add_inputs = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--input", raw_inputs,
                                    "Price CSV as <symbol>=<path>; repeat per asset");
        if (required) opt->required();
    };

    CLI::App* stats = app.add_subcommand("stats", "Descriptive statistics of log-returns");
    add_inputs(stats, true);
    stats->add_option("--window", config.window,
                      "Split into sample/test sub-periods at this observation count");
    stats->add_option("--trading-days", config.trading_days, "Days used to annualize the mean");
    add_common(stats);

    CLI::App* backtest = app.add_subcommand(
        "backtest", "Rolling next-day VaR backtest with the Kupiec test (loss convention)");
    add_inputs(backtest, true);
    backtest->add_option("--model", config.model, "Forecast model")
        ->transform(CLI::CheckedTransformer(model_map, CLI::ignore_case));
    backtest->add_option("--window", config.window, "Estimation window length (default 750)");
    backtest->add_option("--alpha", config.alphas, "Tail level; repeatable")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    backtest->add_option("--zeta", config.zeta, "EWMA decay for wb_normal_star")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    backtest->add_option("--weights", weights_text, "Comma-separated portfolio weights");
    add_common(backtest);

    CLI::App* var = app.add_subcommand(
        "var", "One-shot barycenter VaR/CVaR and classical aggregates");
    add_inputs(var, false);
    var->add_option("--mean", config.means, "Explicit per-asset mean; repeatable");
    var->add_option("--sd", config.sds, "Explicit per-asset standard deviation; repeatable");
    var->add_option("--alpha", config.alphas, "Tail level; repeatable")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    var->add_option("--weights", weights_text, "Comma-separated weights");
    var->add_option("--convention", config.convention, "Sign convention")
        ->transform(CLI::CheckedTransformer(convention_map, CLI::ignore_case));
    add_common(var);

    CLI::App* barycenter =
        app.add_subcommand("barycenter", "Barycenter of Gaussian measures (1d or multivariate)");
    barycenter->add_option("--mean", barycenter_args.means, "1d member location; repeatable");
    barycenter->add_option("--sd", barycenter_args.sds, "1d member scale; repeatable");
    barycenter->add_option("--cov", barycenter_args.cov_paths,
                           "Covariance matrix CSV; repeat per measure");
    barycenter->add_option("--mean-vec", barycenter_args.mean_vectors,
                           "Comma-separated mean vector per --cov (default zero)");
    barycenter->add_option("--weights", weights_text, "Comma-separated weights");
    barycenter->add_option("--tol", barycenter_args.tol, "Fixed-point residual tolerance");
    barycenter->add_option("--max-iter", barycenter_args.max_iter, "Fixed-point iteration cap");
    barycenter->add_option("--scheme", scheme_name, "Fixed-point map")
        ->check(CLI::IsMember({"interpolation", "substitution"}));
    add_common(barycenter);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    for (const std::string& raw : raw_inputs) {
        const std::size_t eq = raw.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == raw.size()) {
            err << "error: --input must be <symbol>=<path>, got '" << raw << "'\n";
            return kExitConfig;
        }
        config.inputs.emplace_back(raw.substr(0, eq), raw.substr(eq + 1));
    }
    if (!weights_text.empty()) {
        try {
            config.weights = parse_comma_list(weights_text);
        } catch (const std::exception&) {
            err << "error: --weights must be a comma-separated number list\n";
            return kExitConfig;
        }
    }
    barycenter_args.scheme = scheme_name == "substitution" ? FixedPointScheme::substitution
                                                           : FixedPointScheme::interpolation;

    if (stats->parsed()) return cmd_stats(config, out, err);
    if (backtest->parsed()) return cmd_backtest(config, out, err);
    if (var->parsed()) return cmd_var(config, out, err);
    return cmd_barycenter(config, barycenter_args, out, err);
}

}  // namespace wbr::cli
