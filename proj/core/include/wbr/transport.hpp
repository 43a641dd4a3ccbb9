#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wbr/distributions.hpp"
#include "wbr/errors.hpp"

namespace wbr {

/// N location-scale measures over one shared profile, with barycentric
/// weights on the simplex. The atoms of every barycenter and risk formula.
class WeightedEnsemble {
public:
    /// Validates: at least one member, all members share the profile kind,
    /// weights nonnegative and summing to 1 within 1e-12.
    WeightedEnsemble(std::vector<LocationScale> members, std::vector<double> weights);

    std::size_t size() const { return members_.size(); }
    const std::vector<LocationScale>& members() const { return members_; }
    const std::vector<double>& weights() const { return weights_; }
    const StandardProfile& profile() const { return members_.front().profile(); }

    /// Weighted mean of member locations.
    double location_mean() const;
    /// Weighted mean of member scales.
    double scale_mean() const;

private:
    std::vector<LocationScale> members_;
    std::vector<double> weights_;
};

/// 2-Wasserstein distance between two one-dimensional measures, evaluated
/// as the L2 distance between quantile functions: the square root of the
/// midpoint-rule approximation of the integral of |Fa^-1(u) - Fb^-1(u)|^2
/// over (0, 1) with `grid_size` interior points. For two members of one
/// location-scale family the exact value is
/// sqrt((ma - mb)^2 + (sa - sb)^2), and the approximation converges to it
/// as the grid refines.
double w2_1d(const LocationScale& a, const LocationScale& b, std::size_t grid_size = 10'000);

/// Barycenter of a one-dimensional location-scale ensemble: the member of
/// the same family whose location and scale are the weighted means of the
/// ensemble's.
LocationScale barycenter_1d(const WeightedEnsemble& ensemble);

/// Quantile function of the barycenter: the weighted average of member
/// quantiles at u. Coincides with barycenter_1d(e).quantile(u) since all
/// members share one profile.
double barycenter_quantile(const WeightedEnsemble& ensemble, double u);

/// A Gaussian measure on R^d: mean vector plus symmetric positive-definite
/// covariance. Construction validates symmetry and positive-definiteness.
class GaussianMeasureMV {
public:
    GaussianMeasureMV(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

    Eigen::Index dim() const { return mean_.size(); }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return covariance_; }

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd covariance_;
};

/// Diagnostics of the covariance fixed-point solve. `residual` is the
/// Frobenius norm of
///   solution - sum_i w_i (solution^1/2 Sigma_i solution^1/2)^1/2
/// recomputed from the returned iterate.
struct FixedPointReport {
    Eigen::MatrixXd solution;
    double residual = 0.0;
    int iterations = 0;
};

/// The solver failed to reach the residual tolerance within the iteration
/// budget; report() carries the last iterate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, FixedPointReport report)
        : std::runtime_error(what), report_(std::move(report)) {}

    const FixedPointReport& report() const { return report_; }

private:
    FixedPointReport report_;
};

/// Iteration map for the covariance root equation. `interpolation` is the
/// measure-interpolation map
///   S <- S^-1/2 (sum_i w_i (S^1/2 Sigma_i S^1/2)^1/2)^2 S^-1/2,
/// which preserves positive definiteness and converges on ill-conditioned
/// inputs; `substitution` is the naive map
///   S <- sum_i w_i (S^1/2 Sigma_i S^1/2)^1/2,
/// kept for cross-validation.
enum class FixedPointScheme { interpolation, substitution };

struct BarycenterOptions {
    double tol = 1e-10;  // Frobenius residual
    int max_iter = 500;
    FixedPointScheme scheme = FixedPointScheme::interpolation;
};

/// Symmetric positive-definite square root via eigendecomposition.
/// Throws NotSpdError when the input is asymmetric or any eigenvalue is
/// <= 1e-13 times the largest.
Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& S);

struct MvBarycenter {
    GaussianMeasureMV measure;
    FixedPointReport report;
};

/// Barycenter of N multivariate Gaussian measures: mean is the weighted
/// mean of input means; covariance solves
///   S = sum_i w_i (S^1/2 Sigma_i S^1/2)^1/2
/// by fixed-point iteration started from sum_i w_i Sigma_i.
/// Throws ConvergenceError (carrying the last iterate) when the residual
/// stays above options.tol after options.max_iter updates.
MvBarycenter barycenter_gaussian_mv(const std::vector<GaussianMeasureMV>& measures,
                                    const std::vector<double>& weights,
                                    const BarycenterOptions& options = {});

}  // namespace wbr
