#include "vixlab/chain/io.hpp"
#include "vixlab/scenario/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vixlab: volatility-index analytics, simulation and no-arbitrage checks"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    double tol_scale = 1.0;

    auto add_common = [&](CLI::App* cmd, bool with_scenario) {
        if (with_scenario)
            cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        cmd->add_option("--out", out_dir, "output directory (default: runs/<hash>-<timestamp>)");
        cmd->add_option("--seed", seed, "override the scenario seed")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--threads", threads, "worker threads (default: VIXLAB_THREADS or all)");
        cmd->add_option("--tolerance-scale", tol_scale, "multiply all check tolerances");
    };

    std::vector<std::string> chain_files;
    auto* vfc = app.add_subcommand("vix-from-chain",
                                   "discrete index from one or two option-chain files");
    vfc->add_option("chains", chain_files, "chain file(s): CSV+JSON sidecar or single JSON")
        ->required()
        ->expected(1, 2);
    add_common(vfc, false);

    auto* sim = app.add_subcommand("simulate", "simulate the scenario's index model");
    add_common(sim, true);

    auto* chk = app.add_subcommand("check", "run the scenario's no-arbitrage consistency checks");
    add_common(chk, true);

    auto* exh = app.add_subcommand("export-h", "compute and export the squared-index function h");
    add_common(exh, true);

    auto* ver = app.add_subcommand("version", "print the version");

    CLI11_PARSE(app, argc, argv);

    vixlab::scenario::RunOptions opt;
    opt.out_dir = out_dir;
    opt.n_threads = threads;
    opt.tolerance_scale = tol_scale;
    if (seed_set) opt.seed_override = seed;

    try {
        if (ver->parsed()) {
            std::cout << "vixlab " << kVersion << "\n";
            return 0;
        }
        if (vfc->parsed())
            return vixlab::scenario::cmd_vix_from_chain(chain_files, opt, std::cout);
        const auto sc = vixlab::scenario::load_scenario(scenario_path);
        if (sim->parsed()) return vixlab::scenario::cmd_simulate(sc, opt, std::cout);
        if (chk->parsed()) return vixlab::scenario::cmd_check(sc, opt, std::cout);
        if (exh->parsed()) return vixlab::scenario::cmd_export_h(sc, opt, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vixlab::scenario::kExitInputError;
    }
    return vixlab::scenario::kExitInputError;
}
