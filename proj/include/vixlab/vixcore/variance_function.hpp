#pragma once

#include "vixlab/math/pchip.hpp"

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

namespace vixlab::vixcore {

enum class HSource { mc, fk, closed_form };

/// Numerical representation of the squared index h(x) as a function of the
/// state, with gradient access. Carries the full N/(2 tau*) normalization,
/// so sqrt(h) is in vol points. Immutable after construction.
class VarianceFunction {
public:
    VarianceFunction() = default;
    VarianceFunction(Eigen::VectorXd x_grid, Eigen::VectorXd values, HSource source);

    double operator()(double x) const { return interp_(x); }

    /// Node-FD gradient, interpolated between nodes. One-sided at the grid
    /// boundary; *boundary is set when the evaluation had to fall back.
    double gradient(double x, bool* boundary = nullptr) const;

    /// d2h/dx2 from finite differences of the node gradients.
    double second_derivative(double x) const;

    const Eigen::VectorXd& grid() const { return x_; }
    const Eigen::VectorXd& values() const { return h_; }
    const Eigen::VectorXd& node_gradients() const { return dh_; }
    HSource source() const { return source_; }

    double x_min() const { return x_[0]; }
    double x_max() const { return x_[x_.size() - 1]; }

    /// Monte Carlo standard errors per node (empty unless source == mc).
    Eigen::VectorXd std_errors;
    /// Backward solve slices H(t_m, x) on [0, tau*] (set when source == fk).
    std::optional<Eigen::MatrixXd> time_slices;
    Eigen::VectorXd slice_times;
    /// |mu h' + s^2/2 h'' - dH/dt(0+)| per node (set when source == fk).
    Eigen::VectorXd stationarity_residual;
    /// Index of the state component this h is a function of (1 = vol state
    /// of a stochastic-vol pair, 0 = the index itself).
    int state_component = 1;
    double tau_star = 30.0 / 365.0;
    double scale_N = 2e4;

    nlohmann::json to_json() const;
    static VarianceFunction from_json(const nlohmann::json& j);

private:
    Eigen::VectorXd x_, h_, dh_;
    Pchip interp_, grad_interp_;
    HSource source_ = HSource::closed_form;
};

} // namespace vixlab::vixcore
