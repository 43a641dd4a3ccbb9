#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wbr/backtest.hpp"
#include "wbr/report.hpp"
#include "wbr/risk.hpp"
#include "wbr/transport.hpp"

namespace wbr::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNoConvergence = 4;

struct RunConfig {
    std::vector<std::pair<std::string, std::string>> inputs;  // (symbol, path)
    Model model = Model::wb_normal;
    std::optional<std::size_t> window;              // backtest defaults to 750
    std::vector<double> alphas = {0.1, 0.05, 0.01, 0.005};
    double zeta = 0.94;
    std::vector<double> weights;                    // empty = equal
    Convention convention = Convention::loss;
    std::filesystem::path out_dir = ".";
    OutputFormat format = OutputFormat::json;
    int trading_days = 252;
    // Explicit per-asset moments for `var`, bypassing file inputs.
    std::vector<double> means;
    std::vector<double> sds;
};

struct BarycenterArgs {
    std::vector<double> means;                 // one per 1d member
    std::vector<double> sds;                   // one per 1d member
    std::vector<std::string> cov_paths;        // one per multivariate measure
    std::vector<std::string> mean_vectors;     // comma lists, optional, aligned with cov_paths
    double tol = 1e-10;
    int max_iter = 500;
    FixedPointScheme scheme = FixedPointScheme::interpolation;
};

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_backtest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_var(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_barycenter(const RunConfig& config, const BarycenterArgs& args, std::ostream& out,
                   std::ostream& err);

/// Parses argv and dispatches to the subcommand handlers.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wbr::cli
