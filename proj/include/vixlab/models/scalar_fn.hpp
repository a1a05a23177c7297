#pragma once

#include "vixlab/math/pchip.hpp"

#include <functional>
#include <memory>
#include <string>

namespace vixlab::models {

/// Descriptor of a real function of one real variable with derivative
/// access. Named analytic forms carry exact derivatives; tabulated data use
/// a monotone-cubic interpolant; arbitrary callables may supply an analytic
/// derivative or fall back to a central finite difference with step
/// h = max(1e-6, 1e-6 |x|). Value semantics, cheap to copy.
class ScalarFn {
public:
    ScalarFn() = default;

    static ScalarFn constant(double c);
    static ScalarFn affine(double a, double b);      ///< a + b x
    static ScalarFn power(double a, double p);       ///< a x^p
    static ScalarFn sqrt_scaled(double alpha);       ///< alpha sqrt(x), 0 at 0 by continuity
    static ScalarFn tabulated(Eigen::VectorXd x, Eigen::VectorXd y);
    static ScalarFn from_callable(std::string name, std::function<double(double)> f,
                                  std::function<double(double)> df = nullptr);

    double operator()(double x) const { return value_(x); }
    double deriv(double x) const { return deriv_(x); }
    const std::string& name() const { return name_; }
    bool valid() const { return static_cast<bool>(value_); }

private:
    std::string name_;
    std::function<double(double)> value_;
    std::function<double(double)> deriv_;
};

} // namespace vixlab::models
