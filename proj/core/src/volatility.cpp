#include "wbr/volatility.hpp"

#include <cmath>
#include <stdexcept>

namespace wbr {

std::vector<double> ewma_path(std::span<const double> returns, const EwmaConfig& config,
                              double sigma0) {
    if (!(config.zeta > 0.0 && config.zeta < 1.0))
        throw std::domain_error("ewma_path: zeta must be in (0, 1)");
    if (!(sigma0 > 0.0))
        throw std::domain_error("ewma_path: sigma0 must be positive");
    if (returns.empty())
        throw std::domain_error("ewma_path: return sequence must be nonempty");

    std::vector<double> path;
    path.reserve(returns.size());
    double var = sigma0 * sigma0;
    for (double x : returns) {
        var = (1.0 - config.zeta) * x * x + config.zeta * var;
        path.push_back(std::sqrt(var));
    }
    return path;
}

}  // namespace wbr
