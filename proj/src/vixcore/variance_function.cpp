#include "vixlab/vixcore/variance_function.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace vixlab::vixcore {

namespace {

Eigen::VectorXd central_gradients(const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
    const auto n = x.size();
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        const double hm = x[i] - x[i - 1], hp = x[i + 1] - x[i];
        // second-order central difference on a non-uniform grid
        d[i] = (-hp / (hm * (hm + hp))) * h[i - 1] + ((hp - hm) / (hm * hp)) * h[i] +
               (hm / (hp * (hm + hp))) * h[i + 1];
    }
    d[0] = (h[1] - h[0]) / (x[1] - x[0]);
    d[n - 1] = (h[n - 1] - h[n - 2]) / (x[n - 1] - x[n - 2]);
    return d;
}

std::string source_name(HSource s) {
    switch (s) {
        case HSource::mc: return "mc";
        case HSource::fk: return "fk";
        default: return "closed_form";
    }
}

HSource source_from_name(const std::string& s) {
    if (s == "mc") return HSource::mc;
    if (s == "fk") return HSource::fk;
    if (s == "closed_form") return HSource::closed_form;
    throw std::invalid_argument("variance function: unknown source '" + s + "'");
}

Eigen::VectorXd vec_from_json(const nlohmann::json& j) {
    Eigen::VectorXd v(j.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

std::vector<double> vec_to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

} // namespace

VarianceFunction::VarianceFunction(Eigen::VectorXd x_grid, Eigen::VectorXd values, HSource source)
    : x_(std::move(x_grid)), h_(std::move(values)), source_(source) {
    if (x_.size() != h_.size() || x_.size() < 3)
        throw std::invalid_argument("variance function: need >= 3 grid nodes");
    for (Eigen::Index i = 1; i + 1 < x_.size(); ++i)
        if (!(h_[i] > 0.0))
            throw std::invalid_argument("variance function: h must be positive on the interior");
    dh_ = central_gradients(x_, h_);
    interp_ = Pchip(x_, h_);
    grad_interp_ = Pchip(x_, dh_);
}

double VarianceFunction::gradient(double x, bool* boundary) const {
    const bool at_edge = x <= x_[0] || x >= x_[x_.size() - 1];
    if (boundary) *boundary = at_edge;
    if (at_edge) return x <= x_[0] ? dh_[0] : dh_[dh_.size() - 1];
    return grad_interp_(x);
}

double VarianceFunction::second_derivative(double x) const {
    const double lo = x_[0], hi = x_[x_.size() - 1];
    const double h = std::max(1e-7, 1e-4 * (hi - lo) / x_.size());
    const double xl = std::max(x - h, lo), xr = std::min(x + h, hi);
    return (grad_interp_(xr) - grad_interp_(xl)) / (xr - xl);
}

nlohmann::json VarianceFunction::to_json() const {
    nlohmann::json j{{"grid", vec_to_std(x_)},
                     {"values", vec_to_std(h_)},
                     {"gradients", vec_to_std(dh_)},
                     {"source", source_name(source_)},
                     {"state_component", state_component},
                     {"tau_star", tau_star},
                     {"scale_N", scale_N}};
    if (std_errors.size() > 0) j["std_errors"] = vec_to_std(std_errors);
    if (stationarity_residual.size() > 0)
        j["stationarity_residual"] = vec_to_std(stationarity_residual);
    return j;
}

VarianceFunction VarianceFunction::from_json(const nlohmann::json& j) {
    VarianceFunction f(vec_from_json(j.at("grid")), vec_from_json(j.at("values")),
                       source_from_name(j.at("source").get<std::string>()));
    f.state_component = j.value("state_component", 1);
    f.tau_star = j.value("tau_star", 30.0 / 365.0);
    f.scale_N = j.value("scale_N", 2e4);
    if (j.contains("std_errors")) f.std_errors = vec_from_json(j["std_errors"]);
    if (j.contains("stationarity_residual"))
        f.stationarity_residual = vec_from_json(j["stationarity_residual"]);
    return f;
}

} // namespace vixlab::vixcore
