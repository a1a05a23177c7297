#include "vixlab/chain/cboe.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vixlab::chain {

void OptionChain::validate() const {
    if (rows.empty()) throw std::invalid_argument("option chain: no strikes");
    if (!(expiry_time > 0.0)) throw std::invalid_argument("option chain: expiry_time must be > 0");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!(r.strike > 0.0)) throw std::invalid_argument("option chain: strike must be > 0");
        if (r.call_bid < 0.0 || r.put_bid < 0.0 || r.call_ask < r.call_bid || r.put_ask < r.put_bid)
            throw std::invalid_argument("option chain: need ask >= bid >= 0");
        if (i > 0 && !(rows[i - 1].strike < r.strike))
            throw std::invalid_argument("option chain: strikes must be strictly increasing");
    }
}

std::size_t atm_strike_index(const OptionChain& chain) {
    chain.validate();
    std::size_t best = 0;
    double best_diff = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chain.rows.size(); ++i) {
        const double diff = std::abs(chain.rows[i].call_mid() - chain.rows[i].put_mid());
        if (diff < best_diff) {  // strict: ties keep the lower strike
            best_diff = diff;
            best = i;
        }
    }
    return best;
}

double compute_forward_pcp(const OptionChain& chain) {
    const std::size_t i0 = atm_strike_index(chain);
    const auto& r = chain.rows[i0];
    return r.strike + std::exp(chain.rate * chain.expiry_time) * (r.call_mid() - r.put_mid());
}

std::vector<std::size_t> select_strikes(const OptionChain& chain, double k0) {
    chain.validate();
    std::size_t i0 = chain.rows.size();
    for (std::size_t i = 0; i < chain.rows.size(); ++i)
        if (chain.rows[i].strike == k0) i0 = i;
    if (i0 == chain.rows.size())
        throw std::invalid_argument("select_strikes: k0 is not a strike of the chain");

    std::vector<std::size_t> picked{i0};
    // puts, scanning downward
    int consecutive_zero = 0;
    for (std::size_t j = i0; j-- > 0;) {
        if (chain.rows[j].put_bid <= 0.0) {
            if (++consecutive_zero >= 2) break;
            continue;
        }
        consecutive_zero = 0;
        picked.push_back(j);
    }
    // calls, scanning upward
    consecutive_zero = 0;
    for (std::size_t j = i0 + 1; j < chain.rows.size(); ++j) {
        if (chain.rows[j].call_bid <= 0.0) {
            if (++consecutive_zero >= 2) break;
            continue;
        }
        consecutive_zero = 0;
        picked.push_back(j);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

VixComputation compute_single_expiry_vix(const OptionChain& chain) {
    const std::size_t i0 = atm_strike_index(chain);
    const double k0 = chain.rows[i0].strike;
    const double tau = chain.expiry_time;
    const double growth = std::exp(chain.rate * tau);
    const double forward = k0 + growth * (chain.rows[i0].call_mid() - chain.rows[i0].put_mid());

    const auto idx = select_strikes(chain, k0);
    if (idx.empty()) throw std::runtime_error("single-expiry index: no usable quotes");

    VixComputation out;
    out.forward = forward;
    out.k0 = k0;
    out.included_strikes.reserve(idx.size());
    out.per_strike_contribution.reserve(idx.size());

    double sum = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const auto& row = chain.rows[idx[j]];
        const double k = row.strike;
        double dk;
        if (idx.size() == 1)
            dk = 0.0;
        else if (j == 0)
            dk = chain.rows[idx[1]].strike - k;
        else if (j + 1 == idx.size())
            dk = k - chain.rows[idx[j - 1]].strike;
        else
            dk = 0.5 * (chain.rows[idx[j + 1]].strike - chain.rows[idx[j - 1]].strike);

        double theta;
        if (idx[j] == i0)
            theta = 0.5 * (row.call_mid() + row.put_mid());
        else if (row.strike < k0)
            theta = row.put_mid();
        else
            theta = row.call_mid();

        const double weight = 2.0 * growth / tau * dk / (k * k);
        sum += weight * theta;
        out.included_strikes.push_back(k);
        out.per_strike_contribution.push_back({k, dk, theta, weight});
    }

    const double atm_term = (forward / k0 - 1.0);
    const double bracket = sum - atm_term * atm_term / tau;
    if (bracket < 0.0) {
        std::ostringstream msg;
        msg << "single-expiry index: negative variance bracket " << bracket;
        throw std::runtime_error(msg.str());
    }
    out.sub_index = 100.0 * std::sqrt(bracket);
    return out;
}

double interpolate_vix_30d(const VixComputation& v1, const VixComputation& v2,
                           const OptionChain& chain1, const OptionChain& chain2) {
    const int n1 = chain1.days_to_expiry;
    const int n2 = chain2.days_to_expiry;
    if (n2 == n1) throw std::invalid_argument("30d interpolation: equal day counts");
    if (!(n1 <= 30 && 30 <= n2))
        throw std::invalid_argument("30d interpolation: expiries must bracket 30 days");
    const double w1 = double(n2 - 30) / double(n2 - n1);
    const double w2 = double(30 - n1) / double(n2 - n1);
    const double total = 365.0 / 30.0 *
                         (chain1.expiry_time * v1.sub_index * v1.sub_index * w1 +
                          chain2.expiry_time * v2.sub_index * v2.sub_index * w2);
    return std::sqrt(total);
}

} // namespace vixlab::chain
