#include "wbr/distributions.hpp"

#include <cmath>

namespace wbr {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kSqrt2 = 1.4142135623730950488;

double gaussian_density(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double gaussian_cdf(double z) {
    return 0.5 * std::erfc(-z / kSqrt2);
}

// Acklam's rational approximation of the inverse Gaussian CDF (relative
// error ~1.15e-9), followed by one Newton step on the CDF which pushes the
// absolute error well below 1e-12 across (0, 1). Evaluated on the lower
// half only: there cdf(x) - u is computed at full precision (erfc of a
// positive argument, and 1 - u is exact for u >= 0.5), so the upper half
// reflects through symmetry.
double gaussian_quantile_lower(double u) {
    static constexpr double a[6] = {
        -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
        1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {
        -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
        6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr double c[6] = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr double d[4] = {
        7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
        3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (u < p_low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    // Newton refinement: x <- x - (F(x) - u) / f(x).
    const double err = gaussian_cdf(x) - u;
    x -= err / gaussian_density(x);
    return x;
}

double gaussian_quantile(double u) {
    return u > 0.5 ? -gaussian_quantile_lower(1.0 - u) : gaussian_quantile_lower(u);
}

}  // namespace

double StandardProfile::density(double z) const {
    switch (kind_) {
        case ProfileKind::gaussian:
            return gaussian_density(z);
    }
    throw std::logic_error("StandardProfile: unknown profile kind");
}

double StandardProfile::cdf(double z) const {
    switch (kind_) {
        case ProfileKind::gaussian:
            return gaussian_cdf(z);
    }
    throw std::logic_error("StandardProfile: unknown profile kind");
}

double StandardProfile::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("StandardProfile::quantile: u must be in (0, 1)");
    switch (kind_) {
        case ProfileKind::gaussian:
            return gaussian_quantile(u);
    }
    throw std::logic_error("StandardProfile: unknown profile kind");
}

double StandardProfile::tail_mean(double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("StandardProfile::tail_mean: alpha must be in (0, 1)");
    switch (kind_) {
        case ProfileKind::gaussian:
            // E[Z | Z > q_alpha] = phi(q_alpha) / (1 - alpha).
            return gaussian_density(gaussian_quantile(alpha)) / (1.0 - alpha);
    }
    throw std::logic_error("StandardProfile: unknown profile kind");
}

double StandardProfile::variance() const {
    switch (kind_) {
        case ProfileKind::gaussian:
            return 1.0;
    }
    throw std::logic_error("StandardProfile: unknown profile kind");
}

}  // namespace wbr
