#include "vixlab/vixcore/estimators.hpp"

#include "vixlab/math/parallel.hpp"
#include "vixlab/math/tridiag.hpp"
#include "vixlab/sde/noise.hpp"
#include "vixlab/sde/simulate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vixlab::vixcore {

namespace {

/// Streaming estimate of E[int_0^tau X ds | X_0 = x0] and its SE under the
/// scheme used by simulate(); no paths are materialized.
void integrated_state_mc(const models::StochVolSpec& spec, double x0, double tau,
                         const McConfig& mc, bool full_truncation, double& mean, double& se) {
    const double dt = tau / mc.n_steps;
    const std::int64_t n = mc.n_paths;
    sde::NoiseSpec noise;
    noise.dim = 1;  // only the variance factor drives h
    noise.seed = mc.seed;

    std::vector<double> sums(resolve_threads(mc.n_threads), 0.0);
    std::vector<double> sq_sums(sums.size(), 0.0);
    const int workers = static_cast<int>(sums.size());
    const std::int64_t chunk = (n + workers - 1) / workers;

    parallel_for(n, workers, [&](std::int64_t lo, std::int64_t hi) {
        const std::size_t w = static_cast<std::size_t>(lo / chunk);
        double local = 0.0, local_sq = 0.0;
        for (std::int64_t p = lo; p < hi; ++p) {
            auto rng = sde::path_engine(noise, p);
            std::normal_distribution<double> normal(0.0, 1.0);
            double x = x0, acc = 0.0;
            for (int k = 0; k < mc.n_steps; ++k) {
                const double xc = full_truncation ? std::max(x, 0.0) : x;
                const double dz = normal(rng) * std::sqrt(dt);
                double xn = x + spec.mu(xc) * dt + spec.sigma(xc) * dz;
                if (full_truncation) xn = std::max(xn, 0.0);
                acc += 0.5 * (std::max(x, 0.0) + std::max(xn, 0.0)) * dt;
                x = xn;
            }
            local += acc;
            local_sq += acc * acc;
        }
        sums[w] += local;
        sq_sums[w] += local_sq;
    });

    double total = 0.0, total_sq = 0.0;
    for (std::size_t w = 0; w < sums.size(); ++w) {
        total += sums[w];
        total_sq += sq_sums[w];
    }
    mean = total / n;
    const double var = std::max(total_sq / n - mean * mean, 0.0);
    se = std::sqrt(var / n);
}

/// Log-contract estimate -E[ln(F_tau / F_0)] for a multiplicative model.
void log_contract_mc(const models::VectorModelSpec& spec, const Eigen::VectorXd& x0, double tau,
                     const McConfig& mc, double& mean, double& se) {
    sde::TimeGrid grid{0.0, tau, mc.n_steps};
    sde::NoiseSpec noise;
    noise.seed = mc.seed;
    models::VectorModelSpec bumped = spec;
    bumped.x0 = x0;
    const auto bundle =
        sde::simulate(bumped, noise, grid, mc.n_paths, sde::Scheme::euler, mc.n_threads);
    const auto& f = bundle.states[0];
    double total = 0.0, total_sq = 0.0;
    for (Eigen::Index p = 0; p < f.rows(); ++p) {
        if (!(f(p, mc.n_steps) > 0.0))
            throw std::runtime_error("h_by_mc: index path hit a non-positive value");
        const double v = -std::log(f(p, mc.n_steps) / f(p, 0));
        total += v;
        total_sq += v * v;
    }
    mean = total / f.rows();
    se = std::sqrt(std::max(total_sq / f.rows() - mean * mean, 0.0) / f.rows());
}

} // namespace

Eigen::VectorXd default_state_grid(const models::StochVolSpec& spec, double tau_star,
                                   int n_nodes) {
    const double rel_vol = spec.sigma(spec.x0) / std::max(spec.x0, 1e-12);
    const double s = std::max(rel_vol * std::sqrt(tau_star), 0.05);
    const double lo = std::log(spec.x0) - 6.0 * s;
    const double hi = std::log(spec.x0) + 6.0 * s;
    Eigen::VectorXd grid(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        grid[i] = std::exp(lo + (hi - lo) * i / (n_nodes - 1));
    return grid;
}

VarianceFunction h_by_mc(const models::ModelSpec& spec, const models::VixConvention& convention,
                         const Eigen::VectorXd& x_grid, const McConfig& mc) {
    convention.validate();
    if (x_grid.size() < 3) throw std::invalid_argument("h_by_mc: need >= 3 grid nodes");
    const double tau = convention.tau_star;
    const double scale = convention.scale_N;

    Eigen::VectorXd h(x_grid.size()), se(x_grid.size());
    if (std::holds_alternative<models::StochVolSpec>(spec)) {
        const auto& sv = std::get<models::StochVolSpec>(spec);
        sv.validate();
        const bool ft =
            sde::default_scheme(spec) == sde::Scheme::full_truncation_euler;
        for (Eigen::Index i = 0; i < x_grid.size(); ++i) {
            double m, s;
            integrated_state_mc(sv, x_grid[i], tau, mc, ft, m, s);
            h[i] = scale / (2.0 * tau) * m;
            se[i] = scale / (2.0 * tau) * s;
        }
    } else {
        const auto& vm = std::get<models::VectorModelSpec>(spec);
        vm.validate();
        for (Eigen::Index i = 0; i < x_grid.size(); ++i) {
            Eigen::VectorXd x0 = vm.x0;
            x0[0] = x_grid[i];
            double m, s;
            log_contract_mc(vm, x0, tau, mc, m, s);
            h[i] = scale / tau * m;
            se[i] = scale / tau * s;
        }
    }

    for (Eigen::Index i = 0; i < h.size(); ++i) {
        if (h[i] < -3.0 * se[i]) {
            std::ostringstream msg;
            msg << "h_by_mc: negative h estimate " << h[i] << " (se " << se[i] << ") at x "
                << x_grid[i] << "; inconsistent model/convention";
            throw std::runtime_error(msg.str());
        }
        h[i] = std::max(h[i], 0.0);
    }

    VarianceFunction out(x_grid, h, HSource::mc);
    out.std_errors = se;
    out.tau_star = tau;
    out.scale_N = scale;
    out.state_component = std::holds_alternative<models::StochVolSpec>(spec) ? 1 : 0;
    return out;
}

VarianceFunction h_by_fk(const models::StochVolSpec& spec,
                         const models::VixConvention& convention, const FkConfig& fk) {
    spec.validate();
    convention.validate();
    if (fk.n_nodes < 8 || fk.n_steps < 2) throw std::invalid_argument("h_by_fk: grid too small");
    const double tau = convention.tau_star;
    const double src_scale = convention.scale_N / (2.0 * tau);

    Eigen::VectorXd x;
    if (fk.x_min > 0.0 && fk.x_max > fk.x_min) {
        x.resize(fk.n_nodes);
        const double llo = std::log(fk.x_min), lhi = std::log(fk.x_max);
        for (int i = 0; i < fk.n_nodes; ++i)
            x[i] = std::exp(llo + (lhi - llo) * i / (fk.n_nodes - 1));
    } else {
        x = default_state_grid(spec, tau, fk.n_nodes);
    }

    const int n = fk.n_nodes;
    // spatial operator L = mu d/dx + sigma^2/2 d^2/dx^2 as tridiagonal bands
    Eigen::VectorXd al(n), ad(n), au(n);
    al.setZero();
    ad.setZero();
    au.setZero();
    for (int i = 0; i < n; ++i) {
        const double mu = spec.mu(x[i]);
        const double s2 = spec.sigma(x[i]) * spec.sigma(x[i]);
        if (i == 0) {
            // zero second derivative; one-sided first derivative
            const double hp = x[1] - x[0];
            ad[i] += -mu / hp;
            au[i] += mu / hp;
            continue;
        }
        if (i == n - 1) {
            const double hm = x[n - 1] - x[n - 2];
            al[i] += -mu / hm;
            ad[i] += mu / hm;
            continue;
        }
        const double hm = x[i] - x[i - 1], hp = x[i + 1] - x[i];
        const double peclet = std::abs(mu) * std::max(hm, hp) / std::max(s2, 1e-300);
        if (peclet > 2.0) {
            if (mu >= 0.0) {
                ad[i] += -mu / hp;
                au[i] += mu / hp;
            } else {
                al[i] += -mu / hm;
                ad[i] += mu / hm;
            }
        } else {
            al[i] += mu * (-hp / (hm * (hm + hp)));
            ad[i] += mu * ((hp - hm) / (hm * hp));
            au[i] += mu * (hm / (hp * (hm + hp)));
        }
        al[i] += s2 / (hm * (hm + hp));
        ad[i] += -s2 / (hm * hp);
        au[i] += s2 / (hp * (hm + hp));
    }

    const double dt = tau / fk.n_steps;
    // Crank-Nicolson in the time-to-go variable s = tau - t:
    //   (I - dt/2 L) u^{m+1} = (I + dt/2 L) u^m + dt f,  u^0 = 0, h = u(tau)
    Eigen::VectorXd lhs_l = -0.5 * dt * al;
    Eigen::VectorXd lhs_d = Eigen::VectorXd::Ones(n) - 0.5 * dt * ad;
    Eigen::VectorXd lhs_u = -0.5 * dt * au;
    Eigen::VectorXd f = src_scale * x;

    Eigen::MatrixXd slices(fk.n_steps + 1, n);
    slices.row(0).setZero();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int m = 0; m < fk.n_steps; ++m) {
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i) {
            double lu = ad[i] * u[i];
            if (i > 0) lu += al[i] * u[i - 1];
            if (i + 1 < n) lu += au[i] * u[i + 1];
            rhs[i] = u[i] + 0.5 * dt * lu + dt * f[i];
        }
        u = solve_tridiag(lhs_l, lhs_d, lhs_u, rhs);
        if (!u.allFinite())
            throw std::runtime_error(
                "h_by_fk: solver instability; rerun with more time steps (suggested: 2x) or a "
                "narrower state grid");
        slices.row(m + 1) = u.transpose();
    }

    VarianceFunction out(x, u, HSource::fk);
    out.tau_star = tau;
    out.scale_N = convention.scale_N;
    // slices indexed by t = tau - s, matching H(t, x)
    Eigen::MatrixXd by_t(fk.n_steps + 1, n);
    out.slice_times.resize(fk.n_steps + 1);
    for (int m = 0; m <= fk.n_steps; ++m) {
        by_t.row(m) = slices.row(fk.n_steps - m);
        out.slice_times[m] = m * dt;
    }
    out.time_slices = std::move(by_t);

    // stationarity of the t = 0 slice: mu h' + 1/2 sigma^2 h'' + dH/dt(0+) = 0
    const auto& H = *out.time_slices;
    out.stationarity_residual.resize(n);
    for (int i = 0; i < n; ++i) {
        double lu = ad[i] * u[i];
        if (i > 0) lu += al[i] * u[i - 1];
        if (i + 1 < n) lu += au[i] * u[i + 1];
        const double dHdt0 = (H(1, i) - H(0, i)) / dt;
        out.stationarity_residual[i] = std::abs(lu + f[i] + dHdt0);
    }
    return out;
}

VarianceFunction h_heston_closed_form(double kappa, double theta,
                                      const models::VixConvention& convention,
                                      const Eigen::VectorXd& x_grid) {
    convention.validate();
    const double damp = (1.0 - std::exp(-kappa * convention.tau_star)) / (kappa * convention.tau_star);
    Eigen::VectorXd h(x_grid.size());
    for (Eigen::Index i = 0; i < x_grid.size(); ++i)
        h[i] = convention.scale_N / 2.0 * (theta + (x_grid[i] - theta) * damp);
    VarianceFunction out(x_grid, h, HSource::closed_form);
    out.tau_star = convention.tau_star;
    out.scale_N = convention.scale_N;
    return out;
}

} // namespace vixlab::vixcore
