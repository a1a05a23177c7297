#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

namespace vixlab {

/// Trapezoid rule over tabulated nodes. Nodes need not be uniform.
template <typename VecA, typename VecB>
double trapezoid(const VecA& x, const VecB& y) {
    if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
    if (x.size() < 2) return 0.0;
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
        acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return acc;
}

/// Trapezoid rule for f sampled on [a, b] with n uniform cells.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 1) throw std::invalid_argument("trapezoid: need at least one cell");
    const double h = (b - a) / n;
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    return acc * h;
}

} // namespace vixlab
