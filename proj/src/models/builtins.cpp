#include "vixlab/models/builtins.hpp"

#include <cmath>
#include <stdexcept>

namespace vixlab::models {

ScalarFn restricted_drift(const ScalarFn& sigma, double gamma) {
    if (!sigma.valid()) throw std::invalid_argument("restricted_drift: missing sigma");
    if (!(gamma > 0.0)) throw std::invalid_argument("restricted_drift: gamma must be > 0");
    return ScalarFn::from_callable(
        "restricted_drift",
        [sigma, gamma](double x) { return sigma(x) * (0.5 * sigma.deriv(x) - gamma); },
        [sigma, gamma](double x) {
            // product rule with sigma'' by finite difference of sigma'
            const double h = std::max(1e-6, 1e-6 * std::abs(x));
            const double d2 = (sigma.deriv(x + h) - sigma.deriv(x - h)) / (2.0 * h);
            return sigma.deriv(x) * (0.5 * sigma.deriv(x) - gamma) + sigma(x) * 0.5 * d2;
        });
}

TermStructureSpec proportional_termstructure(ScalarFn initial_curve,
                                             std::function<double(double, double)> beta,
                                             double t_star) {
    if (!beta) throw std::invalid_argument("proportional term structure: missing beta");
    // probe the triangular domain for sign violations
    const int n_probe = 24;
    for (int i = 0; i <= n_probe; ++i) {
        for (int j = i; j <= n_probe; ++j) {
            const double t = t_star * i / n_probe;
            const double T = t_star * j / n_probe;
            if (beta(t, T) < 0.0)
                throw std::invalid_argument("proportional term structure: beta must be >= 0");
        }
    }
    TermStructureSpec ts;
    ts.initial_curve = std::move(initial_curve);
    ts.t_star = t_star;
    ts.n_factors = 2;
    ts.mu_v = [](double, double) { return 0.0; };
    ts.nu = [beta = std::move(beta)](double t, double T) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(2);
        v[1] = beta(t, T);
        return v;
    };
    ts.validate();
    return ts;
}

StochVolSpec heston(const HestonInputs& in) {
    if (in.kappa <= 0.0 || in.theta <= 0.0 || in.eta <= 0.0 || in.v0 <= 0.0)
        throw std::invalid_argument("heston: kappa, theta, eta, v0 must be > 0");
    StochVolSpec spec;
    spec.mu = ScalarFn::affine(in.kappa * in.theta, -in.kappa);
    spec.sigma = ScalarFn::sqrt_scaled(in.eta);
    spec.rho = in.rho;
    spec.x0 = in.v0;
    spec.f0 = in.f0;
    spec.validate();
    return spec;
}

StochVolSpec cir_restricted(const CirRestrictedInputs& in) {
    if (in.alpha <= 0.0) throw std::invalid_argument("cir_restricted: alpha must be > 0");
    if (in.gamma <= 0.0) throw std::invalid_argument("cir_restricted: gamma must be > 0");
    StochVolSpec spec;
    spec.sigma = ScalarFn::sqrt_scaled(in.alpha);
    spec.mu = restricted_drift(spec.sigma, in.gamma);
    spec.rho = in.rho;
    spec.x0 = in.x0;
    spec.f0 = in.f0;
    spec.validate();
    return spec;
}

VectorModelSpec gbm_index(const GbmIndexInputs& in) {
    if (in.sigma0 <= 0.0) throw std::invalid_argument("gbm_index: sigma0 must be > 0");
    VectorModelSpec spec;
    spec.dim = 1;
    spec.n_factors = 1;
    spec.x0 = Eigen::VectorXd::Constant(1, in.f0);
    spec.drift = [mu0 = in.mu0](double, const Eigen::VectorXd&) {
        return Eigen::VectorXd::Constant(1, mu0);
    };
    spec.vol = [s = in.sigma0](double, const Eigen::VectorXd&) {
        return Eigen::MatrixXd::Constant(1, 1, s);
    };
    spec.validate();
    return spec;
}

StochVolSpec lognormal_restricted(double sigma0, double x0, double rho, double f0) {
    if (sigma0 <= 0.0) throw std::invalid_argument("lognormal_restricted: sigma0 must be > 0");
    StochVolSpec spec;
    spec.sigma = ScalarFn::from_callable(
        "proportional", [sigma0](double x) { return sigma0 * x; },
        [sigma0](double) { return sigma0; });
    spec.mu = restricted_drift(spec.sigma, 0.5 * sigma0);  // identically zero
    spec.rho = rho;
    spec.x0 = x0;
    spec.f0 = f0;
    spec.validate();
    return spec;
}

double heston_h_closed_form(double kappa, double theta, double v0, double tau_star,
                            double scale_N) {
    const double damp = (1.0 - std::exp(-kappa * tau_star)) / (kappa * tau_star);
    return scale_N / 2.0 * (theta + (v0 - theta) * damp);
}

} // namespace vixlab::models
