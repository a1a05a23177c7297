#pragma once

#include "vixlab/scenario/scenario.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vixlab::scenario {

struct RunOptions {
    std::string out_dir;  ///< empty: <output_directory>/<hash>-<timestamp>
    std::optional<std::uint64_t> seed_override;
    int n_threads = 0;
    double tolerance_scale = 1.0;
};

/// Exit codes shared by all commands: 0 all enabled checks pass, 1 a check
/// failed, 2 input error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

int cmd_vix_from_chain(const std::vector<std::string>& chain_paths, const RunOptions& opt,
                       std::ostream& log);
int cmd_simulate(const Scenario& sc, const RunOptions& opt, std::ostream& log);
int cmd_check(const Scenario& sc, const RunOptions& opt, std::ostream& log);
int cmd_export_h(const Scenario& sc, const RunOptions& opt, std::ostream& log);

/// Resolve the run directory (creating it) for a scenario-driven command.
std::string prepare_run_directory(const Scenario& sc, const RunOptions& opt);

} // namespace vixlab::scenario
