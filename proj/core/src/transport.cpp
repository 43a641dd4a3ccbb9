#include "wbr/transport.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "checks.hpp"

namespace wbr {

namespace {

constexpr double kEigenvalueFloor = 1e-13;  // relative to the largest eigenvalue

void check_square(const Eigen::MatrixXd& S, const char* context) {
    if (S.rows() != S.cols() || S.rows() == 0)
        throw std::invalid_argument(std::string(context) + ": matrix must be square and nonempty");
}

void check_symmetric(const Eigen::MatrixXd& S, const char* context) {
    const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw NotSpdError(std::string(context) + ": matrix is not symmetric");
}

// Eigendecomposition of a validated symmetric matrix, rejecting
// eigenvalues at or below the relative floor.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spd_eigen(const Eigen::MatrixXd& S,
                                                         const char* context) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
    if (es.info() != Eigen::Success)
        throw NotSpdError(std::string(context) + ": eigendecomposition failed");
    const double max_ev = es.eigenvalues().maxCoeff();
    if (!(max_ev > 0.0) || es.eigenvalues().minCoeff() <= kEigenvalueFloor * max_ev)
        throw NotSpdError(std::string(context) + ": matrix is not positive definite");
    return es;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& S) {
    return 0.5 * (S + S.transpose());
}

}  // namespace

WeightedEnsemble::WeightedEnsemble(std::vector<LocationScale> members,
                                   std::vector<double> weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
    if (members_.empty())
        throw std::invalid_argument("WeightedEnsemble: at least one member required");
    if (members_.size() != weights_.size())
        throw std::invalid_argument("WeightedEnsemble: one weight per member required");
    for (const LocationScale& m : members_)
        if (!(m.profile() == members_.front().profile()))
            throw std::invalid_argument("WeightedEnsemble: members must share one profile");
    detail::validate_simplex(weights_, "WeightedEnsemble");
}

double WeightedEnsemble::location_mean() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < members_.size(); ++j) acc += weights_[j] * members_[j].location();
    return acc;
}

double WeightedEnsemble::scale_mean() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < members_.size(); ++j) acc += weights_[j] * members_[j].scale();
    return acc;
}

double w2_1d(const LocationScale& a, const LocationScale& b, std::size_t grid_size) {
    if (grid_size < 2)
        throw std::domain_error("w2_1d: grid_size must be at least 2");
    // Midpoint rule on (0, 1) keeps the quantile evaluations away from the
    // endpoints, where they diverge.
    const double n = static_cast<double>(grid_size);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / n;
        const double diff = a.quantile(u) - b.quantile(u);
        acc += diff * diff;
    }
    return std::sqrt(acc / n);
}

LocationScale barycenter_1d(const WeightedEnsemble& ensemble) {
    return LocationScale(ensemble.profile(), ensemble.location_mean(), ensemble.scale_mean());
}

double barycenter_quantile(const WeightedEnsemble& ensemble, double u) {
    double acc = 0.0;
    for (std::size_t j = 0; j < ensemble.size(); ++j)
        acc += ensemble.weights()[j] * ensemble.members()[j].quantile(u);
    return acc;
}

GaussianMeasureMV::GaussianMeasureMV(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
    check_square(covariance_, "GaussianMeasureMV");
    if (mean_.size() != covariance_.rows())
        throw std::invalid_argument("GaussianMeasureMV: mean and covariance dimensions differ");
    check_symmetric(covariance_, "GaussianMeasureMV");
    spd_eigen(covariance_, "GaussianMeasureMV");
}

Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& S) {
    check_square(S, "sqrtm_spd");
    check_symmetric(S, "sqrtm_spd");
    const auto es = spd_eigen(S, "sqrtm_spd");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

MvBarycenter barycenter_gaussian_mv(const std::vector<GaussianMeasureMV>& measures,
                                    const std::vector<double>& weights,
                                    const BarycenterOptions& options) {
    if (measures.empty())
        throw std::invalid_argument("barycenter_gaussian_mv: at least one measure required");
    if (measures.size() != weights.size())
        throw std::invalid_argument("barycenter_gaussian_mv: one weight per measure required");
    detail::validate_simplex(weights, "barycenter_gaussian_mv");
    if (!(options.tol > 0.0))
        throw std::invalid_argument("barycenter_gaussian_mv: tol must be positive");
    if (options.max_iter < 0)
        throw std::invalid_argument("barycenter_gaussian_mv: max_iter must be nonnegative");

    const Eigen::Index d = measures.front().dim();
    for (const GaussianMeasureMV& m : measures)
        if (m.dim() != d)
            throw std::invalid_argument("barycenter_gaussian_mv: measures must share one dimension");

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < measures.size(); ++i) {
        mean += weights[i] * measures[i].mean();
        sigma += weights[i] * measures[i].covariance();  // initial iterate
    }

    for (int it = 0;; ++it) {
        const auto es = spd_eigen(sigma, "barycenter_gaussian_mv");
        const Eigen::MatrixXd root =
            es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
            es.eigenvectors().transpose();

        Eigen::MatrixXd mixed = Eigen::MatrixXd::Zero(d, d);
        for (std::size_t i = 0; i < measures.size(); ++i)
            mixed += weights[i] * sqrtm_spd(symmetrize(root * measures[i].covariance() * root));

        const double residual = (sigma - mixed).norm();
        if (residual <= options.tol)
            return {GaussianMeasureMV(mean, symmetrize(sigma)),
                    FixedPointReport{symmetrize(sigma), residual, it}};
        if (it == options.max_iter)
            throw ConvergenceError(
                "barycenter_gaussian_mv: residual " + std::to_string(residual) +
                    " above tolerance after " + std::to_string(it) + " iterations",
                FixedPointReport{symmetrize(sigma), residual, it});

        if (options.scheme == FixedPointScheme::interpolation) {
            const Eigen::MatrixXd inv_root =
                es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                es.eigenvectors().transpose();
            sigma = symmetrize(inv_root * mixed * mixed * inv_root);
        } else {
            sigma = mixed;
        }
    }
}

}  // namespace wbr
