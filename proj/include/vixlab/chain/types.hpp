#pragma once

#include <string>
#include <vector>

namespace vixlab::chain {

enum class OptionKind { call, put };

/// One side of a quoted strike.
struct OptionQuote {
    double strike = 0.0;
    double bid = 0.0;
    double ask = 0.0;
    OptionKind kind = OptionKind::call;

    double mid() const { return 0.5 * (bid + ask); }
};

/// One strike row carrying both the call and the put quote.
struct StrikeRow {
    double strike = 0.0;
    double call_bid = 0.0;
    double call_ask = 0.0;
    double put_bid = 0.0;
    double put_ask = 0.0;

    double call_mid() const { return 0.5 * (call_bid + call_ask); }
    double put_mid() const { return 0.5 * (put_bid + put_ask); }
};

/// A single expiry's quotes plus the inputs of the discrete index formula.
/// Strikes are strictly increasing; every strike carries both sides.
struct OptionChain {
    double expiry_time = 0.0;  ///< year fraction T - t, ACT/365
    int days_to_expiry = 0;    ///< calendar days N_T
    double rate = 0.0;         ///< continuously compounded annual rate
    std::string spot_time;     ///< informational timestamp (ISO-8601)
    std::vector<StrikeRow> rows;

    void validate() const;
};

/// Per-strike term of the discrete sum.
struct StrikeContribution {
    double strike = 0.0;
    double delta_k = 0.0;
    double theta = 0.0;   ///< out-of-the-money mid price used
    double weight = 0.0;  ///< 2 e^{r tau} / tau * delta_k / k^2
};

/// Full audit of a single-expiry computation.
struct VixComputation {
    double forward = 0.0;  ///< put-call-parity forward level
    double k0 = 0.0;       ///< at-the-money strike
    std::vector<double> included_strikes;
    std::vector<StrikeContribution> per_strike_contribution;
    double sub_index = 0.0;  ///< vol points (x100 convention)
};

} // namespace vixlab::chain
