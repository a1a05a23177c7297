#pragma once

#include "vixlab/models/specs.hpp"
#include "vixlab/sde/path_bundle.hpp"

namespace vixlab::consistency {

/// Diagonal of the futures family and the recovered drift process, per path
/// per grid time. xi is assembled from its three terms (initial-curve
/// slope, drift integral, stochastic integral), kept separately for
/// diagnostics.
struct ImpliedVixPath {
    Eigen::MatrixXd v_tilde;   ///< n_paths x (n_steps + 1), Fv(t, t)
    Eigen::MatrixXd xi;        ///< n_paths x (n_steps + 1)
    Eigen::MatrixXd xi_slope;  ///< curve-slope term
    Eigen::MatrixXd xi_drift;  ///< mu_v integral term
    Eigen::MatrixXd xi_stoch;  ///< stochastic integral term
    bool has_xi = false;
};

struct FamilyOptions {
    bool with_xi = true;
    /// market price of risk (independent basis); shifts xi to its
    /// risk-neutral form xi + (B^T nu(t,t)) . lambda
    Eigen::VectorXd lambda;
};

/// Simulate the futures family on the triangular (t, T) mesh with T-spacing
/// equal to the bundle's time step, reusing the bundle's increments, and
/// read the diagonal. The stochastic integral in xi uses left-point sums
/// over the stored increments; d/dT is a central difference across the
/// T-mesh (one-sided at T = t and T = t_end).
ImpliedVixPath implied_vix_path(const models::TermStructureSpec& ts,
                                const sde::PathBundle& bundle, const FamilyOptions& opt = {});

/// Full family column Fv(., T): n_paths x (n_steps + 1); entries beyond
/// t = T stay frozen at Fv(T, T). Used by the martingale diagnostic.
Eigen::MatrixXd simulate_family_column(const models::TermStructureSpec& ts,
                                       const sde::PathBundle& bundle, double T,
                                       const Eigen::VectorXd& extra_drift_per_factor = {});

} // namespace vixlab::consistency
