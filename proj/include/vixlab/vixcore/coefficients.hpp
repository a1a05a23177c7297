#pragma once

#include "vixlab/models/specs.hpp"
#include "vixlab/pricing/heston_cf.hpp"
#include "vixlab/vixcore/variance_function.hpp"

#include <map>
#include <optional>

namespace vixlab::vixcore {

/// Gradient with a boundary-evaluation flag (one-sided fallback).
struct Gradient {
    double value = 0.0;
    bool boundary = false;
};

/// dh/dx at x: node-central finite differences (one-sided at the edges).
Gradient gradient_h(const VarianceFunction& hf, double x);

/// w = dh/dx / (2 h). Throws when h(x) <= 0.
double w_from_h(const VarianceFunction& hf, double x);

/// Out-of-the-money prices for tenor tau* on a strike grid, with
/// bump-and-revalue partials with respect to the state components. Calendar
/// partials are optional and gate the u1 coefficient.
struct OptionSurfaceGrid {
    Eigen::VectorXd strikes;  ///< ascending
    Eigen::VectorXd theta;
    std::vector<Eigen::VectorXd> dtheta_dx;             ///< per component
    std::map<std::pair<int, int>, Eigen::VectorXd> d2theta_dxdx;
    std::optional<Eigen::VectorXd> dtheta_dcalendar;    ///< dTheta/dt + dTheta/dtau
    int n_components() const { return static_cast<int>(dtheta_dx.size()); }
};

struct WFromGridResult {
    Eigen::VectorXd w;  ///< one entry per state component
    bool truncation_warning = false;
};

/// w^(i) = 1/(2 tau* V^2) int (1/k^2) dTheta/dx_i m(dk), quadrature under
/// the convention's strike measure. Sets the truncation flag when the
/// integrand has not decayed at the grid ends.
WFromGridResult w_from_option_grid(const OptionSurfaceGrid& surface, double vix,
                                   const models::VixConvention& convention,
                                   double decay_threshold = 1e-8);

/// Drift/diffusion coefficients of the index-derived vol index at one point.
struct VixCoefficients {
    std::optional<double> u1;  ///< needs calendar partials; absent otherwise
    double u2 = 0.0;           ///< -1/(4 tau* V^2 F^2)
    Eigen::MatrixXd uij;
    Eigen::VectorXd w;
    double t = 0.0;
    double vix = 0.0;
    Eigen::VectorXd state;
};

/// Assemble the coefficient set at state x (component layout (F, x_vol) for
/// stochastic-vol specs). Without a surface only u2 and the gradient-based w
/// are populated; uij and u1 require the surface's second/calendar partials.
VixCoefficients vix_coefficients(const VarianceFunction& hf, const models::StochVolSpec& spec,
                                 double f, double x,
                                 const models::VixConvention& convention,
                                 const OptionSurfaceGrid* surface = nullptr);

/// Bump-and-revalue surfaces for the built-in pricers. Components are
/// (F, v0) for Heston and (F) for the flat-vol Black surface.
OptionSurfaceGrid make_heston_surface(const pricing::HestonPricer& pricer, double forward,
                                      const Eigen::VectorXd& strikes, double tau,
                                      double rel_bump = 1e-4, bool with_second = false,
                                      bool with_calendar = false);

OptionSurfaceGrid make_black_surface(double forward, double vol, const Eigen::VectorXd& strikes,
                                     double tau, double rel_bump = 1e-4);

} // namespace vixlab::vixcore
