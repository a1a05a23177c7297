#pragma once

#include "vixlab/consistency/implied_vix.hpp"
#include "vixlab/consistency/report.hpp"
#include "vixlab/models/specs.hpp"
#include "vixlab/sde/path_bundle.hpp"
#include "vixlab/vixcore/variance_function.hpp"

#include <functional>
#include <optional>

namespace vixlab::consistency {

/// Market price of risk over the independent Brownian basis: a constant
/// vector, a deterministic function of t, or a function of (t, state).
struct MarketPriceOfRisk {
    Eigen::VectorXd constant;
    std::function<Eigen::VectorXd(double)> of_time;
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> of_state;

    bool is_zero() const { return constant.size() == 0 && !of_time && !of_state; }
    Eigen::VectorXd at(double t, const Eigen::VectorXd& state, int dim) const;
};

/// Per-sample residual field plus its summary.
struct CheckResult {
    ResidualSummary summary;
    ResidualField field;
};

/// |mu0_t + lambda . sigma0_t| along paths (independent basis).
CheckResult check_cc1(const models::ModelSpec& spec, const MarketPriceOfRisk& lambda,
                      const sde::PathBundle& bundle, double tolerance);

/// |mu_v(t,T) + lambda . nu(t,T)| over the (t, T) mesh.
CheckResult check_cc2(const models::TermStructureSpec& ts, const MarketPriceOfRisk& lambda,
                      const sde::PathBundle& bundle, double tolerance);

/// Diffusion matching on the diagonal, relative per factor:
/// |nu_j(t,t) - sum_i X^i w^(i) sigma^{i,j}| / (|nu_j| + eps) along paths.
CheckResult check_cc3(const models::TermStructureSpec& ts, const models::StochVolSpec& spec,
                      const vixcore::VarianceFunction& hf, const sde::PathBundle& bundle,
                      double tolerance);

/// Drift matching: Ito drift of sqrt(h(X_t)) under the lambda-shifted
/// measure vs the recovered xi. Reports the instantaneous residual
/// (primary) and the integrated |int (lhs - xi) dt| variant.
struct Cc4Result {
    CheckResult instantaneous;
    CheckResult integrated;
};
Cc4Result check_cc4(const models::TermStructureSpec& ts, const models::StochVolSpec& spec,
                    const vixcore::VarianceFunction& hf, const sde::PathBundle& bundle,
                    const MarketPriceOfRisk& lambda, const ImpliedVixPath& ivp, double tolerance);

/// PDE restriction residual field over (t, x):
/// |sum_i x_i sigma^{i,j} dh/dx_i - 2 h nu_j(t,t)| / (2 h |nu_j| + eps).
CheckResult check_genpde(const vixcore::VarianceFunction& hf, const models::StochVolSpec& spec,
                         const models::TermStructureSpec& ts, int n_t_probes, double tolerance);

/// Pathwise agreement of sqrt(h(X_t)) with the futures diagonal:
/// per-path max_t |sqrt(h) - v_tilde| / v_tilde.
CheckResult check_c1_pathwise(const models::StochVolSpec& spec,
                              const vixcore::VarianceFunction& hf, const sde::PathBundle& bundle,
                              const ImpliedVixPath& ivp, double tolerance);

/// Drift estimate of Fv(., T) per mesh maturity with a 95% CI, after
/// shifting the sample to the lambda measure; plus stochastic-exponential
/// density diagnostics.
struct MartingaleRow {
    double maturity = 0.0;
    double drift = 0.0;
    double ci_half_width = 0.0;
    bool contains_zero = false;
};
struct MartingaleResult {
    std::vector<MartingaleRow> rows;
    double density_mean = 1.0;  ///< sample mean of the change-of-measure density
    double density_min = 1.0;
    bool pass = false;
    ResidualSummary summary;
};
MartingaleResult martingale_diagnostic(const models::TermStructureSpec& ts,
                                       const sde::PathBundle& bundle,
                                       const MarketPriceOfRisk& lambda, int n_maturities = 8);

} // namespace vixlab::consistency
