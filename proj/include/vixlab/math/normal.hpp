#pragma once

#include <cmath>

namespace vixlab {

/// Standard normal CDF.
template <typename Scalar>
Scalar norm_cdf(Scalar x) {
    return Scalar(0.5) * std::erfc(-x / std::sqrt(Scalar(2)));
}

/// Standard normal density.
template <typename Scalar>
Scalar norm_pdf(Scalar x) {
    static const Scalar inv_sqrt_2pi =
        Scalar(0.3989422804014326779399460599343818684758586311649346576659258296L);
    return inv_sqrt_2pi * std::exp(-Scalar(0.5) * x * x);
}

} // namespace vixlab
