#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace vixlab::sde {

/// Uniform discretization of [t0, t_end] into n_steps cells.
struct TimeGrid {
    double t0 = 0.0;
    double t_end = 1.0;
    int n_steps = 1;

    double dt() const { return (t_end - t0) / n_steps; }
    double time(int k) const { return t0 + k * dt(); }

    void validate() const {
        if (!(t_end > t0)) throw std::invalid_argument("time grid: t_end must exceed t0");
        if (n_steps < 1) throw std::invalid_argument("time grid: need at least one step");
    }
};

/// Brownian factor description: dimension, cross-factor correlation and the
/// seed material for per-path substreams.
struct NoiseSpec {
    int dim = 1;
    Eigen::MatrixXd correlation;  ///< unit diagonal, PSD; identity if empty
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    Eigen::MatrixXd resolved_correlation() const {
        if (correlation.size() == 0) return Eigen::MatrixXd::Identity(dim, dim);
        return correlation;
    }
};

/// B with B B^T = correlation, via pivoted LDLT so that degenerate (PSD)
/// correlations such as rho = 1 factor cleanly. Throws if any eigenvalue is
/// materially negative.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& correlation);

/// SplitMix64 step; used to derive per-path stream keys from
/// (seed, stream_id, path) so increments are independent of scheduling.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic engine for one path's stream.
std::mt19937_64 path_engine(const NoiseSpec& noise, std::int64_t path);

/// Correlated Gaussian increments with variance dt; one matrix per factor,
/// shaped n_paths x n_steps. Path p is a pure function of (seed, stream_id, p).
std::vector<Eigen::MatrixXd> generate_increments(const NoiseSpec& noise, const TimeGrid& grid,
                                                 std::int64_t n_paths, int n_threads = 0);

} // namespace vixlab::sde
