#pragma once

#include <Eigen/Dense>

namespace vixlab::pricing {

struct HestonParams {
    double kappa = 2.0;   ///< mean-reversion speed of the variance
    double theta = 0.04;  ///< long-run variance
    double eta = 0.3;     ///< vol of variance
    double v0 = 0.04;     ///< initial variance
    double rho = -0.7;    ///< spot/variance correlation

    void validate() const;
};

/// Semi-closed-form Heston pricer (Lewis integral, branch-cut-safe
/// characteristic function). Prices are undiscounted forward values.
class HestonPricer {
public:
    explicit HestonPricer(HestonParams p, double u_max = 400.0, int n_nodes = 4096);

    double call(double forward, double strike, double tau) const;
    double put(double forward, double strike, double tau) const;

    /// Out-of-the-money price (put below the forward, call at or above).
    double otm(double forward, double strike, double tau) const;

    /// Batched calls over a strike vector; the characteristic function is
    /// evaluated once per quadrature node and shared across strikes.
    Eigen::VectorXd calls(double forward, const Eigen::VectorXd& strikes, double tau) const;

    const HestonParams& params() const { return params_; }

private:
    HestonParams params_;
    double u_max_;
    int n_;
};

} // namespace vixlab::pricing
