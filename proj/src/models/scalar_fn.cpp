#include "vixlab/models/scalar_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace vixlab::models {

namespace {

std::function<double(double)> central_fd(std::function<double(double)> f) {
    return [f = std::move(f)](double x) {
        const double h = std::max(1e-6, 1e-6 * std::abs(x));
        return (f(x + h) - f(x - h)) / (2.0 * h);
    };
}

} // namespace

ScalarFn ScalarFn::constant(double c) {
    ScalarFn fn;
    fn.name_ = "constant";
    fn.value_ = [c](double) { return c; };
    fn.deriv_ = [](double) { return 0.0; };
    return fn;
}

ScalarFn ScalarFn::affine(double a, double b) {
    ScalarFn fn;
    fn.name_ = "affine";
    fn.value_ = [a, b](double x) { return a + b * x; };
    fn.deriv_ = [b](double) { return b; };
    return fn;
}

ScalarFn ScalarFn::power(double a, double p) {
    ScalarFn fn;
    fn.name_ = "power";
    fn.value_ = [a, p](double x) { return a * std::pow(x, p); };
    fn.deriv_ = [a, p](double x) { return a * p * std::pow(x, p - 1.0); };
    return fn;
}

ScalarFn ScalarFn::sqrt_scaled(double alpha) {
    ScalarFn fn;
    fn.name_ = "sqrt_scaled";
    fn.value_ = [alpha](double x) { return alpha * std::sqrt(std::max(x, 0.0)); };
    fn.deriv_ = [alpha](double x) {
        if (x <= 0.0) return 0.0;  // one-sided limit is unbounded; clamp at the origin
        return 0.5 * alpha / std::sqrt(x);
    };
    return fn;
}

ScalarFn ScalarFn::tabulated(Eigen::VectorXd x, Eigen::VectorXd y) {
    auto interp = std::make_shared<Pchip>(std::move(x), std::move(y));
    ScalarFn fn;
    fn.name_ = "tabulated";
    fn.value_ = [interp](double x) { return (*interp)(x); };
    fn.deriv_ = [interp](double x) { return interp->deriv(x); };
    return fn;
}

ScalarFn ScalarFn::from_callable(std::string name, std::function<double(double)> f,
                                 std::function<double(double)> df) {
    if (!f) throw std::invalid_argument("ScalarFn: null callable");
    ScalarFn fn;
    fn.name_ = std::move(name);
    fn.deriv_ = df ? std::move(df) : central_fd(f);
    fn.value_ = std::move(f);
    return fn;
}

} // namespace vixlab::models
