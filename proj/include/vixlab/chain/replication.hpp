#pragma once

#include <Eigen/Dense>
#include <functional>

namespace vixlab::chain {

/// Twice-differentiable payoff descriptor for static replication.
struct PayoffFn {
    std::function<double(double)> value;
    std::function<double(double)> first;   ///< f'
    std::function<double(double)> second;  ///< f''
};

/// Static replication of f as cash + forward + option strips:
///   f(x) = f(y) + f'(y)(x - y)
///        + int_y^inf (x-k)^+ f''(k) dk + int_0^y (k-x)^+ f''(k) dk
/// with f'' sampled on a strike grid. Put weights cover grid strikes <= y,
/// call weights cover grid strikes >= y (truncated by the grid).
struct ReplicationWeights {
    double anchor = 0.0;        ///< expansion point y
    double value_at_anchor = 0.0;
    double linear_coeff = 0.0;  ///< f'(y)
    Eigen::VectorXd grid;       ///< full strike grid, ascending
    Eigen::VectorXd put_strikes, put_weights;    ///< f'' below y
    Eigen::VectorXd call_strikes, call_weights;  ///< f'' above y
};

/// Sample f'' on the grid around anchor y. Throws if y is outside the grid.
ReplicationWeights replication_weights(const PayoffFn& f, double y, const Eigen::VectorXd& grid);

/// Evaluate the replication at x by trapezoid quadrature of the strips.
double apply_replication(const ReplicationWeights& w, double x);

} // namespace vixlab::chain
