#pragma once

#include "vixlab/chain/types.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace vixlab::chain {

/// Thrown on malformed chain files; carries a line/field description.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV with header strike,call_bid,call_ask,put_bid,put_ask plus a JSON
/// sidecar { "days_to_expiry": int, "rate": float, "spot_time": str }.
OptionChain load_chain_csv(const std::string& csv_path, const std::string& sidecar_path);

/// Single-file JSON alternative carrying the same fields.
OptionChain load_chain_json(const std::string& path);

/// Dispatch on extension: .json -> single file, otherwise CSV + sidecar
/// (sidecar path = csv path with extension replaced by .json).
OptionChain load_chain(const std::string& path);

void save_chain_csv(const OptionChain& chain, const std::string& csv_path,
                    const std::string& sidecar_path);

nlohmann::json computation_report(const VixComputation& v);

} // namespace vixlab::chain
