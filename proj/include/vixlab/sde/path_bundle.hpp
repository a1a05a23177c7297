#pragma once

#include "vixlab/sde/noise.hpp"

#include <string>
#include <vector>

namespace vixlab::sde {

/// Simulated states plus the Brownian increments that produced them. One
/// matrix per component / factor, shaped n_paths x (n_steps + 1) for states
/// and n_paths x n_steps for increments. Immutable after construction.
struct PathBundle {
    TimeGrid grid;
    NoiseSpec noise;
    std::vector<Eigen::MatrixXd> states;
    std::vector<Eigen::MatrixXd> increments;
    std::vector<std::string> component_names;

    std::int64_t n_paths() const { return states.empty() ? 0 : states[0].rows(); }
    int n_components() const { return static_cast<int>(states.size()); }
    int n_factors() const { return static_cast<int>(increments.size()); }
};

/// Re-express the same paths under the measure shifted by a constant market
/// price of risk: increment matrices move by -(B lambda)_f dt, states are
/// untouched (the paths are the same functions of omega).
PathBundle girsanov_tilt(const PathBundle& bundle, const Eigen::VectorXd& lambda);

/// Columnar CSV: path,step,t,component,value.
void export_csv(const PathBundle& bundle, const std::string& path);

/// Binary dump. Layout (little endian): magic "VIXPATH1", u64 n_paths,
/// u64 n_steps, u64 n_components, u64 n_factors, f64 t0, f64 t_end, then
/// states (component-major, path-major rows) and increments, all f64.
void export_binary(const PathBundle& bundle, const std::string& path);
PathBundle import_binary(const std::string& path);

} // namespace vixlab::sde
