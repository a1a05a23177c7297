#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace vixlab {

/// Monotone cubic (Fritsch-Carlson) interpolant with derivative access.
/// Shape-preserving: never overshoots the data, so strictly positive data
/// stay strictly positive between nodes.
class Pchip {
public:
    Pchip() = default;

    Pchip(Eigen::VectorXd x, Eigen::VectorXd y) : x_(std::move(x)), y_(std::move(y)) {
        const auto n = x_.size();
        if (n != y_.size()) throw std::invalid_argument("pchip: size mismatch");
        if (n < 2) throw std::invalid_argument("pchip: need at least two nodes");
        for (Eigen::Index i = 0; i + 1 < n; ++i)
            if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("pchip: x not strictly increasing");
        d_ = slopes(x_, y_);
    }

    double x_min() const { return x_[0]; }
    double x_max() const { return x_[x_.size() - 1]; }
    const Eigen::VectorXd& nodes() const { return x_; }
    const Eigen::VectorXd& values() const { return y_; }

    double operator()(double x) const {
        const auto i = cell(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
    }

    double deriv(double x) const {
        const auto i = cell(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t;
        const double g00 = (6 * t2 - 6 * t) / h, g10 = 3 * t2 - 4 * t + 1;
        const double g01 = (-6 * t2 + 6 * t) / h, g11 = 3 * t2 - 2 * t;
        return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
    }

private:
    static Eigen::VectorXd slopes(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        const auto n = x.size();
        Eigen::VectorXd h(n - 1), delta(n - 1), d(n);
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            delta[i] = (y[i + 1] - y[i]) / h[i];
        }
        if (n == 2) {
            d[0] = d[1] = delta[0];
            return d;
        }
        for (Eigen::Index i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d[i] = 0.0;
            } else {
                const double w1 = 2 * h[i] + h[i - 1];
                const double w2 = h[i] + 2 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        return d;
    }

    static double edge_slope(double h0, double h1, double del0, double del1) {
        double d = ((2 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0)
            d = 0.0;
        else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
            d = 3.0 * del0;
        return d;
    }

    Eigen::Index cell(double x) const {
        if (x < x_[0] || x > x_[x_.size() - 1])
            throw std::out_of_range("pchip: evaluation outside node range");
        auto it = std::upper_bound(x_.data(), x_.data() + x_.size(), x);
        Eigen::Index i = std::max<Eigen::Index>(Eigen::Index(it - x_.data()) - 1, 0);
        return std::min(i, x_.size() - 2);
    }

    Eigen::VectorXd x_, y_, d_;
};

} // namespace vixlab
