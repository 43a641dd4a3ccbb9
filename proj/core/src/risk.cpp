#include "wbr/risk.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "checks.hpp"

namespace wbr {

namespace {

void check_alpha(double alpha, const char* context) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error(std::string(context) + ": alpha must be in (0, 1)");
}

}  // namespace

PortfolioSpec::PortfolioSpec(std::vector<double> asset_weights)
    : weights_(std::move(asset_weights)) {
    detail::validate_simplex(weights_, "PortfolioSpec");
}

PortfolioSpec PortfolioSpec::equal(std::size_t n_assets) {
    if (n_assets == 0)
        throw std::invalid_argument("PortfolioSpec: at least one asset required");
    return PortfolioSpec(std::vector<double>(n_assets, 1.0 / static_cast<double>(n_assets)));
}

double wb_var(const WeightedEnsemble& ensemble, const RiskQuery& query) {
    check_alpha(query.alpha, "wb_var");
    const double q = ensemble.location_mean() +
                     ensemble.scale_mean() * ensemble.profile().quantile(query.alpha);
    return query.convention == Convention::quantile ? q : -q;
}

double wb_cvar(const WeightedEnsemble& ensemble, const RiskQuery& query) {
    check_alpha(query.alpha, "wb_cvar");
    const double m = ensemble.location_mean();
    const double s = ensemble.scale_mean();
    if (query.convention == Convention::quantile)
        return m + s * ensemble.profile().tail_mean(query.alpha);
    return -m + s * ensemble.profile().tail_mean(1.0 - query.alpha);
}

double varcov_var(const Eigen::VectorXd& means, const Eigen::MatrixXd& cov,
                  const PortfolioSpec& portfolio, const RiskQuery& query) {
    check_alpha(query.alpha, "varcov_var");
    const Eigen::Index n = means.size();
    if (cov.rows() != n || cov.cols() != n ||
        static_cast<Eigen::Index>(portfolio.size()) != n)
        throw std::invalid_argument("varcov_var: means, cov and weights dimensions differ");

    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw NotSpdError("varcov_var: covariance is not symmetric");
    // Perfectly correlated portfolios are legitimate degenerate Gaussians,
    // so semidefinite input is accepted; the zero matrix and indefinite
    // matrices are not.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const double max_ev = es.info() == Eigen::Success ? es.eigenvalues().maxCoeff() : -1.0;
    if (es.info() != Eigen::Success || !(max_ev > 0.0) ||
        es.eigenvalues().minCoeff() < -1e-13 * max_ev)
        throw NotSpdError("varcov_var: covariance is not positive semidefinite");

    const Eigen::Map<const Eigen::VectorXd> w(portfolio.weights().data(), n);
    const double portfolio_mean = w.dot(means);
    const double portfolio_sd = std::sqrt(std::max(w.dot(cov * w), 0.0));
    const double loss = -portfolio_mean -
                        portfolio_sd * StandardProfile::gaussian().quantile(query.alpha);
    return query.convention == Convention::loss ? loss : -loss;
}

double simple_sum_var(std::span<const double> individual_vars) {
    if (individual_vars.empty())
        throw std::invalid_argument("simple_sum_var: at least one VaR required");
    double total = 0.0;
    for (double v : individual_vars) total += v;
    return total;
}

}  // namespace wbr
