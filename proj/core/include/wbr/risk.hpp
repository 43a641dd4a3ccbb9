#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "wbr/transport.hpp"

namespace wbr {

/// Sign convention for reported risk figures.
///
/// `quantile` returns the barycenter quantile itself,
///   m + s * Gz^-1(alpha),
/// the closed-form expression. `loss` reports a positive
/// loss threshold,
///   -m - s * Gz^-1(alpha),
/// the form the backtests use with small alpha. The two carry the same
/// information; keeping the flag explicit avoids silent sign mixing.
enum class Convention { quantile, loss };

struct RiskQuery {
    double alpha = 0.01;
    Convention convention = Convention::loss;
};

/// Nonnegative asset weights summing to 1.
class PortfolioSpec {
public:
    explicit PortfolioSpec(std::vector<double> asset_weights);

    static PortfolioSpec equal(std::size_t n_assets);

    std::size_t size() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

/// Wasserstein barycenter Value-at-Risk of the ensemble:
/// quantile convention gives mean_loc + mean_scale * Gz^-1(alpha), loss
/// convention its negation.
double wb_var(const WeightedEnsemble& ensemble, const RiskQuery& query);

/// Wasserstein barycenter Conditional Value-at-Risk. Quantile convention
/// gives mean_loc + mean_scale * tail_mean(alpha). Loss convention reports
/// the expected shortfall of the loss beyond its VaR,
///   -mean_loc + mean_scale * tail_mean(1 - alpha),
/// the sign/reflection image of the quantile form; it dominates the
/// loss-convention VaR at the same alpha.
double wb_cvar(const WeightedEnsemble& ensemble, const RiskQuery& query);

/// Variance-covariance portfolio VaR under a multivariate Gaussian model:
/// portfolio mean w'means and deviation sqrt(w' cov w), reported as
/// -mean - dev * PhiInv(alpha) in the loss convention (negated in the
/// quantile convention). Throws NotSpdError unless cov is symmetric
/// positive semidefinite with at least one positive eigenvalue (perfect
/// correlation is a legitimate degenerate case; the zero matrix is not).
double varcov_var(const Eigen::VectorXd& means, const Eigen::MatrixXd& cov,
                  const PortfolioSpec& portfolio, const RiskQuery& query);

/// Total VaR under the simple-summation method: the plain sum of the
/// per-asset loss-convention VaRs.
double simple_sum_var(std::span<const double> individual_vars);

}  // namespace wbr
