#include "vixlab/consistency/implied_vix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vixlab::consistency {

namespace {

void check_inputs(const models::TermStructureSpec& ts, const sde::PathBundle& bundle) {
    ts.validate();
    bundle.grid.validate();
    if (bundle.n_factors() != ts.n_factors)
        throw std::invalid_argument("implied vix: bundle factor count does not match nu");
    if (bundle.grid.t_end > ts.t_star + 1e-12)
        throw std::invalid_argument("implied vix: grid extends beyond the T* horizon");
}

} // namespace

ImpliedVixPath implied_vix_path(const models::TermStructureSpec& ts,
                                const sde::PathBundle& bundle, const FamilyOptions& opt) {
    check_inputs(ts, bundle);
    const int n = bundle.grid.n_steps;
    const auto n_paths = bundle.n_paths() > 0 ? bundle.n_paths() : bundle.increments[0].rows();
    const double dt = bundle.grid.dt();
    const int nf = ts.n_factors;

    Eigen::VectorXd lambda = opt.lambda;
    Eigen::MatrixXd B;
    if (lambda.size() > 0) {
        if (lambda.size() != nf)
            throw std::invalid_argument("implied vix: lambda dimension mismatch");
        B = sde::psd_factor(bundle.noise.resolved_correlation());
    }

    ImpliedVixPath out;
    out.v_tilde.resize(n_paths, n + 1);
    out.has_xi = opt.with_xi;
    if (opt.with_xi) {
        out.xi.resize(n_paths, n + 1);
        out.xi_slope.resize(n_paths, n + 1);
        out.xi_drift.resize(n_paths, n + 1);
        out.xi_stoch.resize(n_paths, n + 1);
    }

    // live family values Fv(t_k, T_m) per column m; frozen at expiry
    Eigen::MatrixXd cur(n_paths, n + 1);
    for (int m = 0; m <= n; ++m) cur.col(m).setConstant(ts.initial_curve(bundle.grid.time(m)));

    Eigen::MatrixXd mu_int, sto_int;
    if (opt.with_xi) {
        mu_int = Eigen::MatrixXd::Zero(n_paths, n + 1);
        sto_int = Eigen::MatrixXd::Zero(n_paths, n + 1);
    }

    Eigen::VectorXd a_vec(n_paths), b_vec(n_paths), fhat_t(n_paths);
    for (int k = 0; k <= n; ++k) {
        const double tk = bundle.grid.time(k);
        // column k expires: read the diagonal and assemble xi(t_k)
        out.v_tilde.col(k) = cur.col(k);
        if ((out.v_tilde.col(k).array() <= 0.0).any())
            throw std::runtime_error("implied vix: non-positive futures diagonal");
        if (opt.with_xi) {
            const double slope = ts.initial_curve.deriv(tk);
            out.xi_slope.col(k) = slope * out.v_tilde.col(k).cwiseInverse();
            out.xi_drift.col(k) = mu_int.col(k).cwiseQuotient(out.v_tilde.col(k));
            out.xi_stoch.col(k) = sto_int.col(k).cwiseQuotient(out.v_tilde.col(k));
            out.xi.col(k) = out.xi_slope.col(k) + out.xi_drift.col(k) + out.xi_stoch.col(k);
            if (lambda.size() > 0) {
                const Eigen::VectorXd nu_diag = ts.nu(tk, tk);
                out.xi.col(k).array() += (B.transpose() * nu_diag).dot(lambda);
            }
        }
        if (k == n) break;

        // accumulate the xi integrands at t_k before any column moves
        if (opt.with_xi) {
            for (int m = k + 1; m <= n; ++m) {
                const double Tm = bundle.grid.time(m);
                const double muv = ts.mu_v(tk, Tm);
                const Eigen::VectorXd nu = ts.nu(tk, Tm);
                const Eigen::VectorXd nu_t = ts.nu_T(tk, Tm, dt);
                a_vec.setZero();
                b_vec.setZero();
                for (int f = 0; f < nf; ++f) {
                    a_vec += nu_t[f] * bundle.increments[f].col(k);
                    b_vec += nu[f] * bundle.increments[f].col(k);
                }
                if (m == n)
                    fhat_t = (cur.col(n) - cur.col(n - 1)) / dt;
                else
                    fhat_t = (cur.col(m + 1) - cur.col(m - 1)) / (2.0 * dt);
                mu_int.col(m) += muv * dt * cur.col(m);
                sto_int.col(m) += cur.col(m).cwiseProduct(a_vec) + fhat_t.cwiseProduct(b_vec);
            }
        }
        // advance the live columns from t_k to t_{k+1}
        for (int m = k + 1; m <= n; ++m) {
            const double Tm = bundle.grid.time(m);
            const double muv = ts.mu_v(tk, Tm);
            const Eigen::VectorXd nu = ts.nu(tk, Tm);
            b_vec.setConstant(1.0 + muv * dt);
            for (int f = 0; f < nf; ++f) b_vec += nu[f] * bundle.increments[f].col(k);
            cur.col(m) = cur.col(m).cwiseProduct(b_vec);
        }
    }
    return out;
}

Eigen::MatrixXd simulate_family_column(const models::TermStructureSpec& ts,
                                       const sde::PathBundle& bundle, double T,
                                       const Eigen::VectorXd& extra_drift_per_factor) {
    check_inputs(ts, bundle);
    if (T > ts.t_star + 1e-12) throw std::invalid_argument("family column: T beyond horizon");
    const int n = bundle.grid.n_steps;
    const auto n_paths = bundle.increments[0].rows();
    const double dt = bundle.grid.dt();
    const int nf = ts.n_factors;
    const bool shifted = extra_drift_per_factor.size() > 0;
    if (shifted && extra_drift_per_factor.size() != nf)
        throw std::invalid_argument("family column: drift shift dimension mismatch");

    Eigen::MatrixXd col(n_paths, n + 1);
    col.col(0).setConstant(ts.initial_curve(T));
    Eigen::VectorXd drive(n_paths);
    for (int k = 0; k < n; ++k) {
        const double tk = bundle.grid.time(k);
        if (tk >= T - 1e-12) {  // expired: hold the settlement value
            col.col(k + 1) = col.col(k);
            continue;
        }
        const double muv = ts.mu_v(tk, T);
        const Eigen::VectorXd nu = ts.nu(tk, T);
        drive.setConstant(1.0 + muv * dt);
        for (int f = 0; f < nf; ++f) {
            drive += nu[f] * bundle.increments[f].col(k);
            if (shifted) drive.array() += nu[f] * extra_drift_per_factor[f] * dt;
        }
        col.col(k + 1) = col.col(k).cwiseProduct(drive);
    }
    return col;
}

} // namespace vixlab::consistency
