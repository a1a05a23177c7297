#include "vixlab/sde/noise.hpp"

#include "vixlab/math/parallel.hpp"

#include <cmath>

namespace vixlab::sde {

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& correlation) {
    const auto n = correlation.rows();
    if (correlation.cols() != n) throw std::invalid_argument("noise: correlation must be square");
    if (!correlation.isApprox(correlation.transpose(), 1e-12))
        throw std::invalid_argument("noise: correlation must be symmetric");
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(correlation(i, i) - 1.0) > 1e-12)
            throw std::invalid_argument("noise: correlation must have unit diagonal");

    Eigen::LDLT<Eigen::MatrixXd> ldlt(correlation);
    if (ldlt.info() != Eigen::Success)
        throw std::invalid_argument("noise: correlation is not positive semi-definite");
    Eigen::VectorXd d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d[i] < -1e-10)
            throw std::invalid_argument("noise: correlation is not positive semi-definite");
        d[i] = std::sqrt(std::max(d[i], 0.0));
    }
    Eigen::MatrixXd L = ldlt.matrixL();
    return ldlt.transpositionsP().transpose() * (L * d.asDiagonal());
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 path_engine(const NoiseSpec& noise, std::int64_t path) {
    std::uint64_t s = noise.seed;
    (void)splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL * (noise.stream_id + 1);
    (void)splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(path) + 1);
    const std::uint64_t key = splitmix64(s);
    return std::mt19937_64(key);
}

std::vector<Eigen::MatrixXd> generate_increments(const NoiseSpec& noise, const TimeGrid& grid,
                                                 std::int64_t n_paths, int n_threads) {
    grid.validate();
    if (noise.dim < 1) throw std::invalid_argument("noise: dim must be >= 1");
    if (n_paths < 1) throw std::invalid_argument("noise: need at least one path");
    const Eigen::MatrixXd corr = noise.resolved_correlation();
    if (corr.rows() != noise.dim) throw std::invalid_argument("noise: correlation size mismatch");
    const Eigen::MatrixXd B = psd_factor(corr);
    const double sqrt_dt = std::sqrt(grid.dt());

    std::vector<Eigen::MatrixXd> out(noise.dim);
    for (auto& m : out) m.resize(n_paths, grid.n_steps);

    parallel_for(n_paths, resolve_threads(n_threads), [&](std::int64_t lo, std::int64_t hi) {
        Eigen::VectorXd z(noise.dim);
        for (std::int64_t p = lo; p < hi; ++p) {
            auto rng = path_engine(noise, p);
            std::normal_distribution<double> normal(0.0, 1.0);
            for (int k = 0; k < grid.n_steps; ++k) {
                for (int f = 0; f < noise.dim; ++f) z[f] = normal(rng);
                const Eigen::VectorXd dw = sqrt_dt * (B * z);
                for (int f = 0; f < noise.dim; ++f) out[f](p, k) = dw[f];
            }
        }
    });
    return out;
}

} // namespace vixlab::sde
