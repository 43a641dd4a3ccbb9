#pragma once

#include <stdexcept>

namespace wbr {

enum class ProfileKind { gaussian };

/// A zero-location, unit-scale distribution profile: the standardized
/// random variable Z behind a location-scale family. Every profile exposes
/// density, CDF, quantile, variance and the upper tail mean, which is all
/// the downstream risk formulas need; adding a non-Gaussian profile means
/// adding one enumerator and its evaluations here.
class StandardProfile {
public:
    static StandardProfile gaussian() { return StandardProfile(ProfileKind::gaussian); }

    ProfileKind kind() const { return kind_; }

    double density(double z) const;
    double cdf(double z) const;

    /// Inverse CDF. Evaluated by a rational approximation refined with one
    /// Newton step on the CDF; absolute accuracy better than 1e-12.
    /// Throws std::domain_error unless 0 < u < 1.
    double quantile(double u) const;

    /// E[Z | Z > quantile(alpha)]. For the Gaussian profile this is
    /// density(quantile(alpha)) / (1 - alpha).
    /// Throws std::domain_error unless 0 < alpha < 1.
    double tail_mean(double alpha) const;

    /// Variance of the standardized variable (1 for the Gaussian).
    double variance() const;

private:
    explicit StandardProfile(ProfileKind kind) : kind_(kind) {}

    ProfileKind kind_;
};

inline bool operator==(const StandardProfile& a, const StandardProfile& b) {
    return a.kind() == b.kind();
}

/// A profile shifted by `location` and stretched by `scale`: the law of
/// location + scale * Z. Immutable after construction; scale must be
/// strictly positive.
class LocationScale {
public:
    LocationScale(StandardProfile profile, double location, double scale)
        : profile_(profile), location_(location), scale_(scale) {
        if (!(scale > 0.0))
            throw std::invalid_argument("LocationScale: scale must be positive");
    }

    const StandardProfile& profile() const { return profile_; }
    double location() const { return location_; }
    double scale() const { return scale_; }

    /// location + scale * profile.quantile(u).
    double quantile(double u) const { return location_ + scale_ * profile_.quantile(u); }

private:
    StandardProfile profile_;
    double location_;
    double scale_;
};

}  // namespace wbr
