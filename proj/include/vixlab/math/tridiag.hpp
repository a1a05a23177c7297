#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace vixlab {

/// Thomas algorithm for a tridiagonal system (lower, diag, upper bands).
/// lower[0] and upper[n-1] are ignored. Overwrites nothing; returns x.
inline Eigen::VectorXd solve_tridiag(const Eigen::VectorXd& lower, const Eigen::VectorXd& diag,
                                     const Eigen::VectorXd& upper, const Eigen::VectorXd& rhs) {
    const auto n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n)
        throw std::invalid_argument("solve_tridiag: band size mismatch");
    Eigen::VectorXd c(n), d(n);
    double beta = diag[0];
    if (beta == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
    c[0] = upper[0] / beta;
    d[0] = rhs[0] / beta;
    for (Eigen::Index i = 1; i < n; ++i) {
        beta = diag[i] - lower[i] * c[i - 1];
        if (beta == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
        c[i] = upper[i] / beta;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / beta;
    }
    for (Eigen::Index i = n - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
    return d;
}

} // namespace vixlab
