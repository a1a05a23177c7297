#pragma once

#include "vixlab/models/specs.hpp"

namespace vixlab::models {

/// Drift implied by a proportional futures family with diagonal level gamma:
/// mu(x) = sigma(x) (sigma'(x)/2 - gamma).
ScalarFn restricted_drift(const ScalarFn& sigma, double gamma);

/// Futures family dFv(t,T) = beta(t,T) Fv(t,T) dZ with zero drift; the
/// loading sits on the variance-state factor (index 1). beta must be >= 0
/// on the triangle 0 <= t < T <= T*.
TermStructureSpec proportional_termstructure(ScalarFn initial_curve,
                                             std::function<double(double, double)> beta,
                                             double t_star);

struct HestonInputs {
    double kappa = 2.0, theta = 0.04, eta = 0.3, v0 = 0.04, rho = -0.7, f0 = 100.0;
};
struct CirRestrictedInputs {
    double alpha = 0.5, gamma = 0.3, x0 = 0.04, rho = 0.0, f0 = 100.0;
};
struct GbmIndexInputs {
    double sigma0 = 0.2, f0 = 100.0, mu0 = 0.0;
};

StochVolSpec heston(const HestonInputs& in);
StochVolSpec cir_restricted(const CirRestrictedInputs& in);
VectorModelSpec gbm_index(const GbmIndexInputs& in);

/// Proportional-volatility variance state sigma(x) = sigma0 x with the
/// diagonal pinned at gamma = sigma0/2, the member of the restricted family
/// whose drift vanishes identically.
StochVolSpec lognormal_restricted(double sigma0, double x0, double rho = 0.0, double f0 = 100.0);

/// Exact h for Heston: h(x) = N/2 [theta + (x - theta)(1 - e^{-k tau})/(k tau)].
double heston_h_closed_form(double kappa, double theta, double v0, double tau_star,
                            double scale_N = 2e4);

} // namespace vixlab::models
