#pragma once

#include "vixlab/chain/types.hpp"

#include <cstddef>
#include <vector>

namespace vixlab::chain {

/// Forward level k0 + e^{r tau} (C0 - P0), where k0 minimizes |C - P| over
/// strikes (mid prices; ties broken by the lower strike).
double compute_forward_pcp(const OptionChain& chain);

/// Index of the at-the-money strike used by compute_forward_pcp.
std::size_t atm_strike_index(const OptionChain& chain);

/// Strike selection around k0: puts scanning down, calls scanning up.
/// Zero-bid strikes are skipped; a direction stops after two consecutive
/// zero bids. k0 itself is always included. Returns row indices, ascending.
std::vector<std::size_t> select_strikes(const OptionChain& chain, double k0);

/// Discrete single-expiry index in vol points, with the full audit trail.
/// Throws on an empty usable set and on a negative bracket.
VixComputation compute_single_expiry_vix(const OptionChain& chain);

/// 30-day interpolation between two sub-indices (365/30 convention,
/// calendar-day weights). Requires n1 <= 30 <= n2 with n1 < n2.
double interpolate_vix_30d(const VixComputation& v1, const VixComputation& v2,
                           const OptionChain& chain1, const OptionChain& chain2);

} // namespace vixlab::chain
