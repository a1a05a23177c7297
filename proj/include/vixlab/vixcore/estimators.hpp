#pragma once

#include "vixlab/models/specs.hpp"
#include "vixlab/vixcore/variance_function.hpp"

#include <cstdint>

namespace vixlab::vixcore {

struct McConfig {
    std::int64_t n_paths = 20000;
    int n_steps = 200;
    std::uint64_t seed = 0;
    int n_threads = 0;
};

/// h(x) per grid node by Monte Carlo. Stochastic-vol models use the
/// integrated-variance form h = N/(2 tau*) E[int_0^{tau*} X ds | X_0 = x];
/// general multiplicative models use the log-contract form
/// h = -(N/tau*) E[ln(F_{tau*}/F_0)] with the grid bumping the designated
/// component. Common random numbers across nodes keep h smooth in x.
VarianceFunction h_by_mc(const models::ModelSpec& spec, const models::VixConvention& convention,
                         const Eigen::VectorXd& x_grid, const McConfig& mc);

struct FkConfig {
    int n_nodes = 400;
    int n_steps = 200;
    /// grid bounds; if not set, [x0 e^{-6 s}, x0 e^{6 s}] with s the model's
    /// relative vol scale over tau*
    double x_min = 0.0;
    double x_max = 0.0;
};

/// h by a Crank-Nicolson backward solve of
///   dH/dt + mu H_x + 1/2 sigma^2 H_xx + N/(2 tau*) x = 0,  H(tau*, .) = 0,
/// central differences with upwinding where the cell Peclet number exceeds
/// 2, zero-second-derivative boundaries, log-spaced nodes. h = H(0, .).
VarianceFunction h_by_fk(const models::StochVolSpec& spec,
                         const models::VixConvention& convention, const FkConfig& fk);

/// Heston closed-form h on a grid (test and cross-check oracle).
VarianceFunction h_heston_closed_form(double kappa, double theta,
                                      const models::VixConvention& convention,
                                      const Eigen::VectorXd& x_grid);

/// Log-spaced grid centered at x0 used by the FK default placement.
Eigen::VectorXd default_state_grid(const models::StochVolSpec& spec, double tau_star, int n_nodes);

} // namespace vixlab::vixcore
