#include "vixlab/pricing/heston_cf.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace vixlab::pricing {

namespace {

using dcomplex = std::complex<double>;

/// phi(u) = E[exp(i u ln(F_T/F_0))] in the formulation that keeps the
/// complex log on its principal branch for all maturities.
dcomplex heston_cf(const HestonParams& p, dcomplex u, double tau) {
    const dcomplex iu(0.0, 1.0);
    const dcomplex beta = p.kappa - p.rho * p.eta * iu * u;
    const dcomplex d = std::sqrt(beta * beta + p.eta * p.eta * (iu * u + u * u));
    const dcomplex g = (beta - d) / (beta + d);
    const dcomplex em = std::exp(-d * tau);
    const dcomplex D = (beta - d) / (p.eta * p.eta) * (1.0 - em) / (1.0 - g * em);
    const dcomplex C =
        p.kappa / (p.eta * p.eta) * ((beta - d) * tau - 2.0 * std::log((1.0 - g * em) / (1.0 - g)));
    return std::exp(C * p.theta + D * p.v0);
}

} // namespace

void HestonParams::validate() const {
    if (kappa <= 0.0 || theta <= 0.0 || eta <= 0.0 || v0 <= 0.0)
        throw std::invalid_argument("heston: kappa, theta, eta, v0 must be > 0");
    if (std::abs(rho) > 1.0) throw std::invalid_argument("heston: |rho| <= 1 required");
}

HestonPricer::HestonPricer(HestonParams p, double u_max, int n_nodes)
    : params_(p), u_max_(u_max), n_(n_nodes) {
    params_.validate();
    if (u_max_ <= 0.0 || n_ < 16) throw std::invalid_argument("heston: bad quadrature settings");
    if (n_ % 2 != 0) ++n_;  // Simpson needs an even cell count
}

Eigen::VectorXd HestonPricer::calls(double forward, const Eigen::VectorXd& strikes,
                                    double tau) const {
    if (forward <= 0.0 || tau <= 0.0) throw std::invalid_argument("heston: need F > 0, tau > 0");
    const double du = u_max_ / n_;
    // Lewis: C = F - sqrt(F K)/pi * int_0^inf Re[e^{i u x} phi(u - i/2)] / (u^2 + 1/4) du
    Eigen::VectorXcd phi(n_ + 1);
    Eigen::VectorXd wq(n_ + 1), us(n_ + 1);
    for (int j = 0; j <= n_; ++j) {
        const double u = j * du;
        us[j] = u;
        phi[j] = heston_cf(params_, dcomplex(u, -0.5), tau) / (u * u + 0.25);
        wq[j] = (j == 0 || j == n_) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    }
    Eigen::VectorXd out(strikes.size());
    for (Eigen::Index k = 0; k < strikes.size(); ++k) {
        const double x = std::log(forward / strikes[k]);
        double acc = 0.0;
        for (int j = 0; j <= n_; ++j)
            acc += wq[j] * std::real(std::exp(dcomplex(0.0, us[j] * x)) * phi[j]);
        acc *= du / 3.0;
        out[k] = forward - std::sqrt(forward * strikes[k]) / M_PI * acc;
    }
    return out;
}

double HestonPricer::call(double forward, double strike, double tau) const {
    Eigen::VectorXd k(1);
    k[0] = strike;
    return calls(forward, k, tau)[0];
}

double HestonPricer::put(double forward, double strike, double tau) const {
    return call(forward, strike, tau) - (forward - strike);
}

double HestonPricer::otm(double forward, double strike, double tau) const {
    return strike < forward ? put(forward, strike, tau) : call(forward, strike, tau);
}

} // namespace vixlab::pricing
