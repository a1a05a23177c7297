#include "vixlab/vixcore/coefficients.hpp"

#include "vixlab/math/trapezoid.hpp"
#include "vixlab/pricing/black.hpp"

#include <cmath>
#include <stdexcept>

namespace vixlab::vixcore {

namespace {

/// int (1/k^2) g(k) m(dk) under the convention's measure.
double measure_quadrature(const Eigen::VectorXd& strikes, const Eigen::VectorXd& g,
                          const models::VixConvention& conv) {
    if (conv.measure == models::StrikeMeasure::continuous_lebesgue_times_N) {
        Eigen::VectorXd integrand = g.array() / strikes.array().square();
        return conv.scale_N * trapezoid(strikes, integrand);
    }
    if (conv.discrete_strikes.size() != strikes.size())
        throw std::invalid_argument("convention: discrete measure strikes do not match surface");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < strikes.size(); ++i)
        acc += conv.discrete_weights[i] * g[i] / (strikes[i] * strikes[i]);
    return acc;
}

bool decayed(const Eigen::VectorXd& strikes, const Eigen::VectorXd& g, double threshold) {
    Eigen::VectorXd integrand = g.array().abs() / strikes.array().square();
    const double peak = integrand.maxCoeff();
    if (peak <= 0.0) return true;
    return integrand[0] <= threshold * peak && integrand[integrand.size() - 1] <= threshold * peak;
}

} // namespace

Gradient gradient_h(const VarianceFunction& hf, double x) {
    Gradient g;
    g.value = hf.gradient(x, &g.boundary);
    return g;
}

double w_from_h(const VarianceFunction& hf, double x) {
    const double h = hf(x);
    if (!(h > 0.0)) throw std::runtime_error("w_from_h: h must be positive");
    return hf.gradient(x) / (2.0 * h);
}

WFromGridResult w_from_option_grid(const OptionSurfaceGrid& surface, double vix,
                                   const models::VixConvention& convention,
                                   double decay_threshold) {
    convention.validate();
    if (!(vix > 0.0)) throw std::invalid_argument("w_from_option_grid: V must be > 0");
    if (surface.strikes.size() < 3)
        throw std::invalid_argument("w_from_option_grid: strike grid too small");
    WFromGridResult out;
    out.w.resize(surface.n_components());
    const double scale = 1.0 / (2.0 * convention.tau_star * vix * vix);
    for (int i = 0; i < surface.n_components(); ++i) {
        const auto& partial = surface.dtheta_dx[i];
        if (partial.size() != surface.strikes.size())
            throw std::invalid_argument("w_from_option_grid: partial size mismatch");
        out.w[i] = scale * measure_quadrature(surface.strikes, partial, convention);
        if (!decayed(surface.strikes, partial, decay_threshold)) out.truncation_warning = true;
    }
    return out;
}

VixCoefficients vix_coefficients(const VarianceFunction& hf, const models::StochVolSpec& spec,
                                 double f, double x, const models::VixConvention& convention,
                                 const OptionSurfaceGrid* surface) {
    convention.validate();
    const double h = hf(x);
    if (!(h > 0.0)) throw std::runtime_error("vix_coefficients: V^2 must be > 0");
    const double v = std::sqrt(h);
    const double tau = convention.tau_star;

    VixCoefficients out;
    out.vix = v;
    out.state.resize(2);
    out.state << f, x;
    out.u2 = -1.0 / (4.0 * tau * h * f * f);

    // gradient representation of w over components (F, x): dh/dF = 0 for a
    // stochastic-vol state
    out.w = Eigen::VectorXd::Zero(2);
    out.w[1] = w_from_h(hf, x);

    if (surface) {
        const double scale2 = 1.0 / (4.0 * tau * h);
        out.uij = Eigen::MatrixXd::Zero(surface->n_components(), surface->n_components());
        for (const auto& [ij, partial] : surface->d2theta_dxdx)
            out.uij(ij.first, ij.second) =
                scale2 * measure_quadrature(surface->strikes, partial, convention) -
                0.5 * out.w[ij.first] * out.w[ij.second];
        if (surface->dtheta_dcalendar) {
            out.u1 = -1.0 / (2.0 * tau) +
                     1.0 / (2.0 * tau * h) *
                         measure_quadrature(surface->strikes, *surface->dtheta_dcalendar,
                                            convention);
        }
        // cross-check w against the surface when first partials are present
        if (!surface->dtheta_dx.empty()) {
            const auto wg = w_from_option_grid(*surface, v, convention);
            if (wg.w.size() == out.w.size()) out.w = wg.w;
        }
    }
    return out;
}

OptionSurfaceGrid make_heston_surface(const pricing::HestonPricer& pricer, double forward,
                                      const Eigen::VectorXd& strikes, double tau, double rel_bump,
                                      bool with_second, bool with_calendar) {
    OptionSurfaceGrid g;
    g.strikes = strikes;
    const auto& p0 = pricer.params();

    // instrument types are fixed by the base forward so bumps revalue the
    // same options
    auto otm_prices = [&, base_f = forward](double f, double v0, double tenor) {
        pricing::HestonParams p = p0;
        p.v0 = v0;
        pricing::HestonPricer bumped(p);
        Eigen::VectorXd calls = bumped.calls(f, strikes, tenor);
        Eigen::VectorXd theta(strikes.size());
        for (Eigen::Index i = 0; i < strikes.size(); ++i)
            theta[i] = strikes[i] < base_f ? calls[i] - (f - strikes[i]) : calls[i];
        return theta;
    };

    const double df = rel_bump * forward;
    const double dv = rel_bump * p0.v0;
    g.theta = otm_prices(forward, p0.v0, tau);
    const Eigen::VectorXd f_up = otm_prices(forward + df, p0.v0, tau);
    const Eigen::VectorXd f_dn = otm_prices(forward - df, p0.v0, tau);
    const Eigen::VectorXd v_up = otm_prices(forward, p0.v0 + dv, tau);
    const Eigen::VectorXd v_dn = otm_prices(forward, p0.v0 - dv, tau);
    g.dtheta_dx.push_back((f_up - f_dn) / (2.0 * df));
    g.dtheta_dx.push_back((v_up - v_dn) / (2.0 * dv));

    if (with_second) {
        g.d2theta_dxdx[{0, 0}] = (f_up - 2.0 * g.theta + f_dn) / (df * df);
        g.d2theta_dxdx[{1, 1}] = (v_up - 2.0 * g.theta + v_dn) / (dv * dv);
        const Eigen::VectorXd pp = otm_prices(forward + df, p0.v0 + dv, tau);
        const Eigen::VectorXd pm = otm_prices(forward + df, p0.v0 - dv, tau);
        const Eigen::VectorXd mp = otm_prices(forward - df, p0.v0 + dv, tau);
        const Eigen::VectorXd mm = otm_prices(forward - df, p0.v0 - dv, tau);
        const Eigen::VectorXd cross = (pp - pm - mp + mm) / (4.0 * df * dv);
        g.d2theta_dxdx[{0, 1}] = cross;
        g.d2theta_dxdx[{1, 0}] = cross;
    }
    if (with_calendar) {
        // prices are time-homogeneous in t, so the calendar move is the
        // tenor derivative alone
        const double dtau = 1e-4 * tau;
        const Eigen::VectorXd t_up = otm_prices(forward, p0.v0, tau + dtau);
        const Eigen::VectorXd t_dn = otm_prices(forward, p0.v0, tau - dtau);
        g.dtheta_dcalendar = (t_up - t_dn) / (2.0 * dtau);
    }
    return g;
}

OptionSurfaceGrid make_black_surface(double forward, double vol, const Eigen::VectorXd& strikes,
                                     double tau, double rel_bump) {
    OptionSurfaceGrid g;
    g.strikes = strikes;
    auto otm_prices = [&, base_f = forward](double f) {
        Eigen::VectorXd theta(strikes.size());
        for (Eigen::Index i = 0; i < strikes.size(); ++i)
            theta[i] = strikes[i] < base_f ? pricing::black_put(f, strikes[i], vol, tau)
                                           : pricing::black_call(f, strikes[i], vol, tau);
        return theta;
    };
    const double df = rel_bump * forward;
    g.theta = otm_prices(forward);
    g.dtheta_dx.push_back((otm_prices(forward + df) - otm_prices(forward - df)) / (2.0 * df));
    return g;
}

} // namespace vixlab::vixcore
