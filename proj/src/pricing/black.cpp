#include "vixlab/pricing/black.hpp"

#include "vixlab/math/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace vixlab::pricing {

double black_call(double forward, double strike, double vol, double tau) {
    if (forward <= 0.0 || strike <= 0.0) throw std::invalid_argument("black: need F, K > 0");
    if (vol <= 0.0 || tau <= 0.0) return std::max(forward - strike, 0.0);
    const double sd = vol * std::sqrt(tau);
    const double d1 = (std::log(forward / strike) + 0.5 * sd * sd) / sd;
    const double d2 = d1 - sd;
    return forward * norm_cdf(d1) - strike * norm_cdf(d2);
}

double black_put(double forward, double strike, double vol, double tau) {
    return black_call(forward, strike, vol, tau) - (forward - strike);
}

chain::OptionChain make_black_chain(const SyntheticChainConfig& cfg) {
    if (cfg.rel_spacing <= 0.0 || cfg.rel_lo <= 0.0 || cfg.rel_hi <= cfg.rel_lo)
        throw std::invalid_argument("synthetic chain: bad strike range");
    chain::OptionChain out;
    out.days_to_expiry = cfg.days_to_expiry;
    out.expiry_time = cfg.days_to_expiry / 365.0;
    out.rate = cfg.rate;
    const double disc = std::exp(-cfg.rate * out.expiry_time);
    const int n = static_cast<int>(std::lround((cfg.rel_hi - cfg.rel_lo) / cfg.rel_spacing));
    out.rows.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double k = (cfg.rel_lo + i * cfg.rel_spacing) * cfg.forward;
        chain::StrikeRow r;
        r.strike = k;
        const double c = std::max(disc * black_call(cfg.forward, k, cfg.vol, out.expiry_time), 0.0);
        const double p = std::max(disc * black_put(cfg.forward, k, cfg.vol, out.expiry_time), 0.0);
        r.call_bid = r.call_ask = c;
        r.put_bid = r.put_ask = p;
        out.rows.push_back(r);
    }
    return out;
}

} // namespace vixlab::pricing
