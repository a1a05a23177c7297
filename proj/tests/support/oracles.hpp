#pragma once

#include "vixlab/chain/types.hpp"
#include "vixlab/models/specs.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace testsupport {

/// Integrated-variance average of the Heston state over tau:
/// theta + (v0 - theta)(1 - e^{-kappa tau})/(kappa tau).
inline long double heston_mean_integrated_variance(long double kappa, long double theta,
                                                   long double v0, long double tau) {
    const long double damp = (1.0L - std::exp(-kappa * tau)) / (kappa * tau);
    return theta + (v0 - theta) * damp;
}

/// High-precision evaluation of the 30-day interpolation used as the
/// independent arithmetic oracle.
inline long double interp_30d_oracle(long double v1, int n1, long double v2, int n2) {
    const long double t1 = n1 / 365.0L, t2 = n2 / 365.0L;
    const long double w1 = (long double)(n2 - 30) / (n2 - n1);
    const long double w2 = (long double)(30 - n1) / (n2 - n1);
    return std::sqrt(365.0L / 30.0L * (t1 * v1 * v1 * w1 + t2 * v2 * v2 * w2));
}

/// Sample mean and standard error of an Eigen vector.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};
inline MeanSe mean_se(const Eigen::VectorXd& v) {
    MeanSe out;
    out.mean = v.mean();
    const double var = (v.array() - out.mean).square().sum() / std::max<Eigen::Index>(v.size() - 1, 1);
    out.se = std::sqrt(var / v.size());
    return out;
}

} // namespace testsupport
