#include "vixlab/consistency/checks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vixlab::consistency {

namespace {

constexpr double kEps = 1e-12;

Eigen::VectorXd zero_vec(int dim) { return Eigen::VectorXd::Zero(dim); }

struct FieldBuilder {
    ResidualField field;
    double max_abs = 0.0;
    double mean_acc = 0.0;
    long long count = 0;
    double max_t = 0.0;
    long long max_path = -1;

    void add(double t, double coord, double r, long long path = -1, bool record = true) {
        const double a = std::abs(r);
        mean_acc += a;
        ++count;
        if (a > max_abs) {
            max_abs = a;
            max_t = t;
            max_path = path;
        }
        if (!record) return;
        field.t.push_back(t);
        field.coordinate.push_back(coord);
        field.residual.push_back(r);
    }

    CheckResult finish(const std::string& name, double tolerance) {
        CheckResult out;
        field.name = name;
        out.field = std::move(field);
        out.summary.name = name;
        out.summary.max_abs = max_abs;
        out.summary.mean_abs = count > 0 ? mean_acc / count : 0.0;
        out.summary.max_at_t = max_t;
        out.summary.max_at_path = max_path;
        out.summary.tolerance = tolerance;
        out.summary.pass = max_abs <= tolerance;
        out.summary.evaluated = true;
        return out;
    }
};

double clamp_to_grid(const vixcore::VarianceFunction& hf, double x) {
    return std::min(std::max(x, hf.x_min()), hf.x_max());
}

/// Driver-basis loadings of (F, X) for the stochastic-vol pair: rows are
/// components, columns factors (W, Z); entries are absolute diffusion
/// coefficients X^i sigma^{i,j}.
Eigen::MatrixXd stochvol_abs_diffusion(const models::StochVolSpec& spec, double f, double x) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = f * std::sqrt(std::max(x, 0.0));
    m(1, 1) = spec.sigma(std::max(x, 0.0));
    return m;
}

} // namespace

Eigen::VectorXd MarketPriceOfRisk::at(double t, const Eigen::VectorXd& state, int dim) const {
    if (of_state) return of_state(t, state);
    if (of_time) return of_time(t);
    if (constant.size() > 0) return constant;
    return zero_vec(dim);
}

CheckResult check_cc1(const models::ModelSpec& spec, const MarketPriceOfRisk& lambda,
                      const sde::PathBundle& bundle, double tolerance) {
    const Eigen::MatrixXd B = sde::psd_factor(bundle.noise.resolved_correlation());
    const int n = bundle.grid.n_steps;
    const auto n_paths = bundle.n_paths();
    FieldBuilder fb;

    for (int k = 0; k <= n; ++k) {
        const double t = bundle.grid.time(k);
        double worst = 0.0, coord = 0.0;
        long long worst_p = 0;
        for (Eigen::Index p = 0; p < n_paths; ++p) {
            double mu0;
            Eigen::VectorXd sigma0;
            Eigen::VectorXd state(bundle.n_components());
            for (int c = 0; c < bundle.n_components(); ++c) state[c] = bundle.states[c](p, k);
            if (std::holds_alternative<models::StochVolSpec>(spec)) {
                const auto& sv = std::get<models::StochVolSpec>(spec);
                mu0 = 0.0;  // the index future is driftless under its own measure
                sigma0 = Eigen::VectorXd::Zero(2);
                sigma0[0] = std::sqrt(std::max(state[1], 0.0));
                (void)sv;
            } else {
                const auto& vm = std::get<models::VectorModelSpec>(spec);
                mu0 = vm.drift(t, state)[0];
                sigma0 = vm.vol(t, state).row(0).transpose();
            }
            const Eigen::VectorXd lam = lambda.at(t, state, static_cast<int>(sigma0.size()));
            const double r = std::abs(mu0 + lam.dot(B.transpose() * sigma0));
            if (r >= worst) {
                worst = r;
                coord = state[0];
                worst_p = p;
            }
        }
        fb.add(t, coord, worst, worst_p);
    }
    return fb.finish("cc1", tolerance);
}

CheckResult check_cc2(const models::TermStructureSpec& ts, const MarketPriceOfRisk& lambda,
                      const sde::PathBundle& bundle, double tolerance) {
    ts.validate();
    const Eigen::MatrixXd B = sde::psd_factor(bundle.noise.resolved_correlation());
    const int n = bundle.grid.n_steps;
    FieldBuilder fb;
    const Eigen::VectorXd state0 = Eigen::VectorXd::Zero(1);
    for (int k = 0; k <= n; ++k) {
        const double t = bundle.grid.time(k);
        for (int m = k; m <= n; ++m) {
            const double T = bundle.grid.time(m);
            const Eigen::VectorXd nu = ts.nu(t, T);
            const Eigen::VectorXd lam = lambda.at(t, state0, ts.n_factors);
            const double r = std::abs(ts.mu_v(t, T) + lam.dot(B.transpose() * nu));
            fb.add(t, T, r);
        }
    }
    return fb.finish("cc2", tolerance);
}

CheckResult check_cc3(const models::TermStructureSpec& ts, const models::StochVolSpec& spec,
                      const vixcore::VarianceFunction& hf, const sde::PathBundle& bundle,
                      double tolerance) {
    ts.validate();
    spec.validate();
    if (bundle.n_components() < 2)
        throw std::invalid_argument("cc3: bundle must carry the (F, X) pair");
    const int n = bundle.grid.n_steps;
    const auto n_paths = bundle.n_paths();
    FieldBuilder fb;

    for (int k = 0; k <= n; ++k) {
        const double t = bundle.grid.time(k);
        const Eigen::VectorXd nu = ts.nu(t, t);
        double worst = 0.0, coord = 0.0;
        long long worst_p = 0;
        for (Eigen::Index p = 0; p < n_paths; ++p) {
            const double f = bundle.states[0](p, k);
            const double x = clamp_to_grid(hf, bundle.states[1](p, k));
            const double h = hf(x);
            const double w = hf.gradient(x) / (2.0 * h);
            const Eigen::MatrixXd diff = stochvol_abs_diffusion(spec, f, x);
            // gradient representation: only the vol component carries dh/dx
            for (int j = 0; j < 2; ++j) {
                const double rhs = w * diff(1, j);  // + 0 * diff(0, j) from dh/dF = 0
                const double rel = std::abs(nu[j] - rhs) / (std::abs(nu[j]) + kEps);
                if (rel >= worst) {
                    worst = rel;
                    coord = x;
                    worst_p = p;
                }
            }
        }
        fb.add(t, coord, worst, worst_p);
    }
    return fb.finish("cc3", tolerance);
}

Cc4Result check_cc4(const models::TermStructureSpec& ts, const models::StochVolSpec& spec,
                    const vixcore::VarianceFunction& hf, const sde::PathBundle& bundle,
                    const MarketPriceOfRisk& lambda, const ImpliedVixPath& ivp, double tolerance) {
    ts.validate();
    spec.validate();
    if (!ivp.has_xi) throw std::invalid_argument("cc4: implied-vix path lacks xi");
    if (ivp.v_tilde.rows() != bundle.n_paths())
        throw std::invalid_argument("cc4: bundle and implied-vix path disagree");
    const Eigen::MatrixXd B = sde::psd_factor(bundle.noise.resolved_correlation());
    const int n = bundle.grid.n_steps;
    const auto n_paths = bundle.n_paths();
    const double dt = bundle.grid.dt();

    FieldBuilder inst;
    double int_max = 0.0, int_mean = 0.0, int_max_t = 0.0;
    long long int_max_p = -1;

    Eigen::VectorXd state(2);
    for (Eigen::Index p = 0; p < n_paths; ++p) {
        double acc = 0.0, acc_scale = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double t = bundle.grid.time(k);
            const double x = clamp_to_grid(hf, bundle.states[1](p, k));
            state << bundle.states[0](p, k), x;
            const double h = hf(x);
            const double hp = hf.gradient(x);
            const double hpp = hf.second_derivative(x);
            const double sg = spec.sigma(x);
            Eigen::VectorXd a_x = Eigen::VectorXd::Zero(2);
            a_x[1] = sg;
            const Eigen::VectorXd lam = lambda.at(t, state, 2);
            const double mu_q = spec.mu(x) + lam.dot(B.transpose() * a_x);
            const double lhs =
                (mu_q * hp + 0.5 * sg * sg * hpp) / (2.0 * h) - (sg * hp) * (sg * hp) / (8.0 * h * h);
            const double xi = ivp.xi(p, k);
            const double rel = std::abs(lhs - xi) / (std::abs(xi) + kEps);
            inst.add(t, x, rel, p, /*record=*/p < 64);  // cap the exported field size
            if (k < n) {
                acc += (lhs - xi) * dt;
                acc_scale += std::abs(xi) * dt;
            }
        }
        const double integrated = std::abs(acc) / (acc_scale + kEps);
        int_mean += integrated;
        if (integrated > int_max) {
            int_max = integrated;
            int_max_t = bundle.grid.t_end;
            int_max_p = p;
        }
    }

    Cc4Result out;
    out.instantaneous = inst.finish("cc4", tolerance);
    out.integrated.summary.name = "cc4_integrated";
    out.integrated.summary.max_abs = int_max;
    out.integrated.summary.mean_abs = n_paths > 0 ? int_mean / n_paths : 0.0;
    out.integrated.summary.max_at_t = int_max_t;
    out.integrated.summary.max_at_path = int_max_p;
    out.integrated.summary.tolerance = tolerance;
    out.integrated.summary.pass = int_max <= tolerance;
    out.integrated.summary.evaluated = true;
    out.integrated.summary.note = "integrated drift difference over the horizon";
    return out;
}

CheckResult check_genpde(const vixcore::VarianceFunction& hf, const models::StochVolSpec& spec,
                         const models::TermStructureSpec& ts, int n_t_probes, double tolerance) {
    ts.validate();
    spec.validate();
    const auto& grid = hf.grid();
    FieldBuilder fb;
    for (int it = 0; it < std::max(n_t_probes, 1); ++it) {
        const double t = ts.t_star * it / std::max(n_t_probes, 1);
        const Eigen::VectorXd nu = ts.nu(t, t);
        for (Eigen::Index i = 1; i + 1 < grid.size(); ++i) {  // interior nodes only
            const double x = grid[i];
            const double h = hf.values()[i];
            const double hp = hf.node_gradients()[i];
            const Eigen::MatrixXd diff = stochvol_abs_diffusion(spec, 1.0, x);
            double worst = 0.0;
            for (int j = 0; j < 2; ++j) {
                const double lhs = diff(1, j) * hp;  // dh/dF = 0 kills the index row
                const double r = std::abs(lhs - 2.0 * h * nu[j]) / (2.0 * h * std::abs(nu[j]) + kEps);
                worst = std::max(worst, r);
            }
            fb.add(t, x, worst);
        }
    }
    return fb.finish("genpde", tolerance);
}

CheckResult check_c1_pathwise(const models::StochVolSpec& spec,
                              const vixcore::VarianceFunction& hf, const sde::PathBundle& bundle,
                              const ImpliedVixPath& ivp, double tolerance) {
    spec.validate();
    if (ivp.v_tilde.rows() != bundle.n_paths() ||
        ivp.v_tilde.cols() != bundle.grid.n_steps + 1)
        throw std::invalid_argument("c1: bundle and implied-vix path disagree");
    const int n = bundle.grid.n_steps;
    const auto n_paths = bundle.n_paths();

    FieldBuilder fb;
    for (int k = 0; k <= n; ++k) {
        const double t = bundle.grid.time(k);
        double worst = 0.0, coord = 0.0;
        long long worst_p = 0;
        for (Eigen::Index p = 0; p < n_paths; ++p) {
            const double x = clamp_to_grid(hf, bundle.states[1](p, k));
            const double v = std::sqrt(hf(x));
            const double vt = ivp.v_tilde(p, k);
            const double rel = std::abs(v - vt) / vt;
            if (rel >= worst) {
                worst = rel;
                coord = x;
                worst_p = p;
            }
        }
        fb.add(t, coord, worst, worst_p);
    }
    return fb.finish("c1_pathwise", tolerance);
}

MartingaleResult martingale_diagnostic(const models::TermStructureSpec& ts,
                                       const sde::PathBundle& bundle,
                                       const MarketPriceOfRisk& lambda, int n_maturities) {
    ts.validate();
    if (lambda.of_time || lambda.of_state)
        throw std::invalid_argument(
            "martingale diagnostic: only constant lambda tilts are supported");
    const int n = bundle.grid.n_steps;
    const double dt = bundle.grid.dt();
    const Eigen::MatrixXd B = sde::psd_factor(bundle.noise.resolved_correlation());

    Eigen::VectorXd shift;  // per-driver drift addition for the tilted sample
    Eigen::VectorXd lam = lambda.constant;
    if (lam.size() > 0) {
        if (lam.size() != bundle.n_factors())
            throw std::invalid_argument("martingale diagnostic: lambda dimension mismatch");
        shift = B * lam;
    }

    MartingaleResult out;
    for (int i = 1; i <= n_maturities; ++i) {
        const int m = std::max(1, (n * i) / n_maturities);
        const double T = bundle.grid.time(m);
        const Eigen::MatrixXd col = simulate_family_column(ts, bundle, T, shift);
        double sxy = 0.0, sxx = 0.0;
        for (Eigen::Index p = 0; p < col.rows(); ++p) {
            for (int k = 0; k < m; ++k) {
                const double xreg = col(p, k) * dt;
                const double yreg = col(p, k + 1) - col(p, k);
                sxy += xreg * yreg;
                sxx += xreg * xreg;
            }
        }
        const double a_hat = sxx > 0.0 ? sxy / sxx : 0.0;
        double rss = 0.0;
        long long n_obs = 0;
        for (Eigen::Index p = 0; p < col.rows(); ++p) {
            for (int k = 0; k < m; ++k) {
                const double e = (col(p, k + 1) - col(p, k)) - a_hat * col(p, k) * dt;
                rss += e * e;
                ++n_obs;
            }
        }
        const double se = sxx > 0.0 && n_obs > 1 ? std::sqrt(rss / (n_obs - 1) / sxx) : 0.0;
        MartingaleRow row;
        row.maturity = T;
        row.drift = a_hat;
        row.ci_half_width = 1.96 * se;
        row.contains_zero = std::abs(a_hat) <= row.ci_half_width;
        out.rows.push_back(row);
    }

    // change-of-measure density diagnostics (Novikov-style, not a proof)
    out.density_mean = 1.0;
    out.density_min = 1.0;
    if (lam.size() > 0 && std::abs(B.determinant()) > 1e-12) {
        const Eigen::MatrixXd Binv = B.inverse();
        double mean = 0.0, mn = std::numeric_limits<double>::infinity();
        const auto n_paths = bundle.increments[0].rows();
        for (Eigen::Index p = 0; p < n_paths; ++p) {
            double expo = 0.0;
            for (int k = 0; k < n; ++k) {
                Eigen::VectorXd dd(bundle.n_factors());
                for (int f = 0; f < bundle.n_factors(); ++f) dd[f] = bundle.increments[f](p, k);
                expo += lam.dot(Binv * dd);
            }
            expo -= 0.5 * lam.squaredNorm() * (bundle.grid.t_end - bundle.grid.t0);
            const double dens = std::exp(expo);
            mean += dens;
            mn = std::min(mn, dens);
        }
        out.density_mean = mean / n_paths;
        out.density_min = mn;
    }

    out.pass = true;
    double worst = 0.0, worst_T = 0.0;
    for (const auto& r : out.rows) {
        if (!r.contains_zero) out.pass = false;
        if (std::abs(r.drift) > worst) {
            worst = std::abs(r.drift);
            worst_T = r.maturity;
        }
    }
    out.summary.name = "martingale";
    out.summary.max_abs = worst;
    out.summary.mean_abs = worst;
    out.summary.max_at_t = worst_T;
    out.summary.tolerance = 0.0;
    out.summary.pass = out.pass;
    out.summary.evaluated = true;
    out.summary.note = "pass iff the 95% drift CI contains 0 for every mesh maturity";
    return out;
}

} // namespace vixlab::consistency
