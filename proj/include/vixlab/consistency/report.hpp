#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace vixlab::consistency {

/// Summary of one residual field with the location of the worst point.
struct ResidualSummary {
    std::string name;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double max_at_t = 0.0;
    long long max_at_path = -1;  ///< -1 when the field is not path-indexed
    double tolerance = 0.0;
    bool pass = false;
    bool evaluated = false;
    std::string note;
};

struct ConsistencyReport {
    std::string scenario_hash;
    std::string h_provenance;
    std::vector<ResidualSummary> rows;

    bool all_pass() const;
    const ResidualSummary* find(const std::string& name) const;

    nlohmann::json to_json() const;
    std::string to_table() const;
};

/// Residual field dumped for plotting: one row per sample.
struct ResidualField {
    std::string name;
    std::vector<double> t;
    std::vector<double> coordinate;  ///< state value or maturity, field-dependent
    std::vector<double> residual;
};

void write_residual_csv(const std::vector<ResidualField>& fields, const std::string& path);

} // namespace vixlab::consistency
