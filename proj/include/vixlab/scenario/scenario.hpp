#pragma once

#include "vixlab/consistency/checks.hpp"
#include "vixlab/models/builtins.hpp"
#include "vixlab/models/specs.hpp"
#include "vixlab/sde/simulate.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vixlab::scenario {

/// Thrown on malformed scenario files (maps to CLI exit code 2).
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimulationConfig {
    double t_end = 30.0 / 365.0;
    int n_steps = 200;
    std::int64_t n_paths = 1000;
    std::uint64_t seed = 0;
    std::string scheme = "default";
};

struct ChecksConfig {
    std::vector<std::string> enabled;
    std::map<std::string, double> tolerances;
    std::string h_source = "fk";
    int fk_nodes = 400;
    int fk_steps = 200;
    std::int64_t mc_paths = 20000;
    int mc_steps = 200;
    std::int64_t martingale_paths = 10000;
    int martingale_maturities = 8;
    Eigen::VectorXd lambda;
};

struct TermStructureConfig {
    std::string type = "proportional";
    std::string beta_form = "constant";
    double beta_level = 0.3;
    double beta_kappa = 0.0;
    std::string curve_type = "lognormal_consistent";
    double curve_v0 = 0.0;   ///< 0 = derive from the index model's h
    double curve_value = 20.0;
    std::vector<double> curve_T, curve_val;
    double mu_v = 0.0;
    double t_star = 0.0;  ///< 0 = simulation t_end
};

struct IndexModelConfig {
    std::string type;
    std::map<std::string, double> params;
};

struct Scenario {
    int schema = 1;
    models::VixConvention convention;
    IndexModelConfig index_model;
    TermStructureConfig term_structure;
    SimulationConfig simulation;
    ChecksConfig checks;
    std::string output_directory = "runs";

    std::string canonical_json() const;
    std::string hash() const;  ///< FNV-1a over the canonical form, hex
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);

/// Materialized model objects ready for simulation and checks.
struct ResolvedScenario {
    Scenario config;
    models::ModelSpec index_model;
    models::TermStructureSpec term_structure;
    sde::Scheme scheme = sde::Scheme::euler;
    consistency::MarketPriceOfRisk lambda;
    double default_tolerance(const std::string& check) const;
};

/// Build the model objects. The "matched" initial curve estimates
/// E[sqrt(h(X_T))] by Monte Carlo with a seed derived from the scenario
/// seed, so resolution is deterministic.
ResolvedScenario resolve(const Scenario& sc);

} // namespace vixlab::scenario
