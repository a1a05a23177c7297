#pragma once

#include "vixlab/chain/types.hpp"

namespace vixlab::pricing {

/// Undiscounted Black-76 call on a forward.
double black_call(double forward, double strike, double vol, double tau);

/// Undiscounted Black-76 put on a forward.
double black_put(double forward, double strike, double vol, double tau);

struct SyntheticChainConfig {
    double forward = 100.0;
    double vol = 0.2;
    double rate = 0.0;
    int days_to_expiry = 30;
    double rel_lo = 0.5;        ///< lowest strike as a fraction of forward
    double rel_hi = 2.0;        ///< highest strike as a fraction of forward
    double rel_spacing = 0.001; ///< strike spacing as a fraction of forward
};

/// Flat-vol Black chain with bid = ask = discounted model price.
chain::OptionChain make_black_chain(const SyntheticChainConfig& cfg);

} // namespace vixlab::pricing
