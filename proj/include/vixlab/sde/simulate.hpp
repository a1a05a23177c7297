#pragma once

#include "vixlab/models/specs.hpp"
#include "vixlab/sde/path_bundle.hpp"

namespace vixlab::sde {

enum class Scheme { euler, full_truncation_euler, milstein };

Scheme default_scheme(const models::ModelSpec& spec);

/// Pathwise integration of the model over the grid. Increments are
/// generated from the noise spec (correlation inferred from the model when
/// the spec leaves it empty) and retained in the bundle. Output is
/// independent of the worker-thread count.
PathBundle simulate(const models::ModelSpec& spec, const NoiseSpec& noise, const TimeGrid& grid,
                    std::int64_t n_paths, Scheme scheme, int n_threads = 0);

/// Integrate from externally supplied increments (one matrix per factor,
/// n_paths x n_steps). Reproduces simulate() bit-exactly when handed the
/// increments it stored.
PathBundle resimulate(const models::ModelSpec& spec, const TimeGrid& grid,
                      const std::vector<Eigen::MatrixXd>& increments, Scheme scheme,
                      int n_threads = 0);

} // namespace vixlab::sde
