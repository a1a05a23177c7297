#pragma once

#include "vixlab/models/scalar_fn.hpp"

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <variant>

namespace vixlab::models {

/// One-factor stochastic-volatility pair:
///   dF/F = sqrt(X) dW,   dX = mu(X) dt + sigma(X) dZ,   corr(W, Z) = rho.
struct StochVolSpec {
    ScalarFn mu;     ///< drift of the variance state
    ScalarFn sigma;  ///< vol of the variance state
    double rho = 0.0;
    double x0 = 0.04;
    double f0 = 100.0;

    void validate() const {
        if (!mu.valid() || !sigma.valid()) throw std::invalid_argument("stochvol: missing mu/sigma");
        if (!(x0 > 0.0) || !(f0 > 0.0)) throw std::invalid_argument("stochvol: need x0, f0 > 0");
        if (std::abs(rho) > 1.0) throw std::invalid_argument("stochvol: |rho| <= 1 required");
    }
};

/// General multiplicative system dX^i = X^i mu^i dt + X^i sigma^i . dW with
/// component 0 designated as the index future F.
struct VectorModelSpec {
    int dim = 1;        ///< number of components (d+1)
    int n_factors = 1;  ///< number of Brownian factors
    Eigen::VectorXd x0;
    /// per-component relative drift mu^i(t, x)
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> drift;
    /// per-component relative loadings sigma^{i,j}(t, x), dim x n_factors
    std::function<Eigen::MatrixXd(double, const Eigen::VectorXd&)> vol;

    void validate() const {
        if (dim < 1 || n_factors < 1) throw std::invalid_argument("vector model: bad dimensions");
        if (x0.size() != dim) throw std::invalid_argument("vector model: x0 size mismatch");
        if (!drift || !vol) throw std::invalid_argument("vector model: missing coefficients");
    }
};

using ModelSpec = std::variant<StochVolSpec, VectorModelSpec>;

/// Term-structure model for the volatility-index futures family:
///   dFv(t,T) = Fv(t,T) [ mu_v(t,T) dt + nu(t,T) . dW_t ],  0 <= t < T <= T*.
struct TermStructureSpec {
    ScalarFn initial_curve;  ///< Fv(0, T) on [0, T*]
    std::function<double(double, double)> mu_v;           ///< mu_v(t, T)
    std::function<Eigen::VectorXd(double, double)> nu;    ///< nu(t, T) over factors
    int n_factors = 2;
    double t_star = 1.0;

    void validate() const {
        if (!initial_curve.valid()) throw std::invalid_argument("term structure: missing curve");
        if (!mu_v || !nu) throw std::invalid_argument("term structure: missing coefficients");
        if (!(t_star > 0.0)) throw std::invalid_argument("term structure: T* must be > 0");
    }

    /// d/dT nu(t, T), central finite difference on the analytic descriptor.
    Eigen::VectorXd nu_T(double t, double T, double h) const {
        const double lo = std::max(T - h, t);
        const double hi = std::min(T + h, t_star);
        return (nu(t, hi) - nu(t, lo)) / (hi - lo);
    }
};

enum class StrikeMeasure { continuous_lebesgue_times_N, discrete };

/// Strike-measure and horizon conventions of the volatility index.
struct VixConvention {
    double tau_star = 30.0 / 365.0;
    double scale_N = 2.0 * 100.0 * 100.0;
    StrikeMeasure measure = StrikeMeasure::continuous_lebesgue_times_N;
    Eigen::VectorXd discrete_strikes;  ///< used when measure == discrete
    Eigen::VectorXd discrete_weights;

    void validate() const {
        if (!(tau_star > 0.0) || !(scale_N > 0.0))
            throw std::invalid_argument("convention: need tau_star, N > 0");
        if (measure == StrikeMeasure::discrete &&
            discrete_strikes.size() != discrete_weights.size())
            throw std::invalid_argument("convention: discrete measure size mismatch");
    }
};

} // namespace vixlab::models
