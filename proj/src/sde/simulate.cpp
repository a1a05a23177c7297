#include "vixlab/sde/simulate.hpp"

#include "vixlab/math/parallel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vixlab::sde {

namespace {

constexpr double kExplosionCap = 1e12;

[[noreturn]] void fail_state(const char* what, std::int64_t path, int step) {
    std::ostringstream msg;
    msg << "simulate: " << what << " at path " << path << " step " << step;
    throw std::runtime_error(msg.str());
}

void guard(double v, std::int64_t path, int step) {
    if (!std::isfinite(v)) fail_state("non-finite state", path, step);
    if (std::abs(v) > kExplosionCap) fail_state("state explosion (|x| > 1e12)", path, step);
}

void step_stochvol(const models::StochVolSpec& spec, Scheme scheme, double dt,
                   Eigen::MatrixXd& f, Eigen::MatrixXd& x, const Eigen::MatrixXd& dw,
                   const Eigen::MatrixXd& dz, std::int64_t lo, std::int64_t hi) {
    const int n_steps = static_cast<int>(dw.cols());
    for (std::int64_t p = lo; p < hi; ++p) {
        for (int k = 0; k < n_steps; ++k) {
            const double fk = f(p, k);
            const double xk = x(p, k);
            const double xp = std::max(xk, 0.0);
            const double xc = scheme == Scheme::full_truncation_euler ? xp : xk;
            const double mu = spec.mu(xc);
            const double sg = spec.sigma(xc);
            double xn = xk + mu * dt + sg * dz(p, k);
            double fn = fk * (1.0 + std::sqrt(xp) * dw(p, k));
            if (scheme == Scheme::milstein) {
                xn += 0.5 * sg * spec.sigma.deriv(xc) * (dz(p, k) * dz(p, k) - dt);
                fn += 0.5 * fk * xp * (dw(p, k) * dw(p, k) - dt);
            }
            if (scheme == Scheme::full_truncation_euler) xn = std::max(xn, 0.0);
            guard(xn, p, k + 1);
            guard(fn, p, k + 1);
            f(p, k + 1) = fn;
            x(p, k + 1) = xn;
        }
    }
}

void step_vector(const models::VectorModelSpec& spec, Scheme scheme, double dt, double t0,
                 std::vector<Eigen::MatrixXd>& states, const std::vector<Eigen::MatrixXd>& dws,
                 std::int64_t lo, std::int64_t hi) {
    const int n_steps = static_cast<int>(dws[0].cols());
    Eigen::VectorXd x(spec.dim), dw(spec.n_factors);
    for (std::int64_t p = lo; p < hi; ++p) {
        for (int k = 0; k < n_steps; ++k) {
            const double t = t0 + k * dt;
            for (int c = 0; c < spec.dim; ++c) x[c] = states[c](p, k);
            for (int f = 0; f < spec.n_factors; ++f) dw[f] = dws[f](p, k);
            const Eigen::VectorXd mu = spec.drift(t, x);
            const Eigen::MatrixXd sg = spec.vol(t, x);
            for (int c = 0; c < spec.dim; ++c) {
                const double diff = sg.row(c).dot(dw);
                double xn = x[c] * (1.0 + mu[c] * dt + diff);
                if (scheme == Scheme::milstein)
                    xn += 0.5 * x[c] * (diff * diff - sg.row(c).squaredNorm() * dt);
                if (scheme == Scheme::full_truncation_euler) xn = std::max(xn, 0.0);
                guard(xn, p, k + 1);
                states[c](p, k + 1) = xn;
            }
        }
    }
}

NoiseSpec effective_noise(const models::ModelSpec& spec, const NoiseSpec& noise) {
    NoiseSpec out = noise;
    if (std::holds_alternative<models::StochVolSpec>(spec)) {
        const auto& sv = std::get<models::StochVolSpec>(spec);
        out.dim = 2;
        if (out.correlation.size() == 0) {
            out.correlation = Eigen::MatrixXd::Identity(2, 2);
            out.correlation(0, 1) = out.correlation(1, 0) = sv.rho;
        }
    } else {
        const auto& vm = std::get<models::VectorModelSpec>(spec);
        out.dim = vm.n_factors;
    }
    return out;
}

} // namespace

Scheme default_scheme(const models::ModelSpec& spec) {
    if (std::holds_alternative<models::StochVolSpec>(spec)) {
        const auto& sv = std::get<models::StochVolSpec>(spec);
        if (sv.sigma.name() == "sqrt_scaled") return Scheme::full_truncation_euler;
    }
    return Scheme::euler;
}

PathBundle resimulate(const models::ModelSpec& spec, const TimeGrid& grid,
                      const std::vector<Eigen::MatrixXd>& increments, Scheme scheme,
                      int n_threads) {
    grid.validate();
    if (increments.empty()) throw std::invalid_argument("simulate: no increments");
    const auto n_paths = increments[0].rows();
    for (const auto& m : increments)
        if (m.rows() != n_paths || m.cols() != grid.n_steps)
            throw std::invalid_argument("simulate: increment shape mismatch");

    PathBundle bundle;
    bundle.grid = grid;
    bundle.increments = increments;
    bundle.noise.dim = static_cast<int>(increments.size());

    const int workers = resolve_threads(n_threads);
    if (std::holds_alternative<models::StochVolSpec>(spec)) {
        const auto& sv = std::get<models::StochVolSpec>(spec);
        sv.validate();
        if (increments.size() != 2)
            throw std::invalid_argument("simulate: stochastic-vol model needs two factors");
        bundle.component_names = {"F", "X"};
        bundle.states.assign(2, Eigen::MatrixXd(n_paths, grid.n_steps + 1));
        bundle.states[0].col(0).setConstant(sv.f0);
        bundle.states[1].col(0).setConstant(sv.x0);
        parallel_for(n_paths, workers, [&](std::int64_t lo, std::int64_t hi) {
            step_stochvol(sv, scheme, grid.dt(), bundle.states[0], bundle.states[1],
                          bundle.increments[0], bundle.increments[1], lo, hi);
        });
    } else {
        const auto& vm = std::get<models::VectorModelSpec>(spec);
        vm.validate();
        if (static_cast<int>(increments.size()) != vm.n_factors)
            throw std::invalid_argument("simulate: factor count mismatch");
        bundle.states.assign(vm.dim, Eigen::MatrixXd(n_paths, grid.n_steps + 1));
        for (int c = 0; c < vm.dim; ++c) {
            bundle.states[c].col(0).setConstant(vm.x0[c]);
            bundle.component_names.push_back(c == 0 ? "F" : "X" + std::to_string(c));
        }
        parallel_for(n_paths, workers, [&](std::int64_t lo, std::int64_t hi) {
            step_vector(vm, scheme, grid.dt(), grid.t0, bundle.states, bundle.increments, lo, hi);
        });
    }
    return bundle;
}

PathBundle simulate(const models::ModelSpec& spec, const NoiseSpec& noise, const TimeGrid& grid,
                    std::int64_t n_paths, Scheme scheme, int n_threads) {
    const NoiseSpec eff = effective_noise(spec, noise);
    auto increments = generate_increments(eff, grid, n_paths, n_threads);
    PathBundle bundle = resimulate(spec, grid, increments, scheme, n_threads);
    bundle.noise = eff;
    return bundle;
}

} // namespace vixlab::sde
