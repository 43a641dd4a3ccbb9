#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace wbr::detail {

// Weights must be nonnegative and sum to 1 within 1e-12.
inline void validate_simplex(std::span<const double> weights, const char* context) {
    if (weights.empty())
        throw std::invalid_argument(std::string(context) + ": weights must be nonempty");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw std::invalid_argument(std::string(context) + ": weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(context) + ": weights must sum to 1");
}

}  // namespace wbr::detail
