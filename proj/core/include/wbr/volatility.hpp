#pragma once

#include <span>
#include <vector>

namespace wbr {

enum class EwmaInit { sample_sd_of_window, first_abs_return };

/// Exponentially weighted moving average filter configuration. `zeta` is
/// the decay in (0, 1); the 0.94 default is the RiskMetrics convention for
/// daily data. `init` selects how the backtest seeds sigma_0 for each
/// window.
struct EwmaConfig {
    double zeta = 0.94;
    EwmaInit init = EwmaInit::sample_sd_of_window;
};

/// Runs the recursion sigma_t = sqrt((1 - zeta) x_t^2 + zeta sigma_{t-1}^2)
/// over the return sequence. The result has the same length as the input;
/// entry t is the estimate available after observing x_t.
/// Throws std::domain_error unless 0 < zeta < 1 and sigma0 > 0, and when
/// the sequence is empty.
std::vector<double> ewma_path(std::span<const double> returns, const EwmaConfig& config,
                              double sigma0);

}  // namespace wbr
