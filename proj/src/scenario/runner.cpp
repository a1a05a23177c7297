#include "vixlab/scenario/runner.hpp"

#include "vixlab/chain/cboe.hpp"
#include "vixlab/chain/io.hpp"
#include "vixlab/consistency/checks.hpp"
#include "vixlab/vixcore/estimators.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace vixlab::scenario {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm_utc);
    return buf;
}

Scenario with_overrides(const Scenario& sc, const RunOptions& opt) {
    Scenario out = sc;
    if (opt.seed_override) out.simulation.seed = *opt.seed_override;
    return out;
}

} // namespace

std::string prepare_run_directory(const Scenario& sc, const RunOptions& opt) {
    std::string dir = opt.out_dir;
    if (dir.empty()) dir = sc.output_directory + "/" + sc.hash() + "-" + timestamp_now();
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_vix_from_chain(const std::vector<std::string>& chain_paths, const RunOptions& opt,
                       std::ostream& log) {
    if (chain_paths.empty() || chain_paths.size() > 2)
        throw std::invalid_argument("vix-from-chain: give one or two chain files");
    std::vector<chain::OptionChain> chains;
    for (const auto& p : chain_paths) chains.push_back(chain::load_chain(p));

    std::string dir = opt.out_dir.empty() ? std::string(".") : opt.out_dir;
    std::filesystem::create_directories(dir);

    json report;
    char line[64];
    if (chains.size() == 1) {
        const auto v = chain::compute_single_expiry_vix(chains[0]);
        report["single_expiry"] = chain::computation_report(v);
        std::snprintf(line, sizeof(line), "%.2f", v.sub_index);
        log << "single-expiry index: " << line << "\n";
    } else {
        if (chains[0].days_to_expiry > chains[1].days_to_expiry) std::swap(chains[0], chains[1]);
        const auto v1 = chain::compute_single_expiry_vix(chains[0]);
        const auto v2 = chain::compute_single_expiry_vix(chains[1]);
        const double headline = chain::interpolate_vix_30d(v1, v2, chains[0], chains[1]);
        report["near"] = chain::computation_report(v1);
        report["next"] = chain::computation_report(v2);
        report["interpolated_30d"] = headline;
        std::snprintf(line, sizeof(line), "%.2f", headline);
        log << "30-day index: " << line << "\n";
    }
    write_json(dir + "/vix_report.json", report);
    return kExitPass;
}

int cmd_simulate(const Scenario& sc_in, const RunOptions& opt, std::ostream& log) {
    const Scenario sc = with_overrides(sc_in, opt);
    if (sc.simulation.n_paths < 1) throw ScenarioError("simulate: empty simulation (n_paths < 1)");
    const auto rs = resolve(sc);
    const std::string dir = prepare_run_directory(sc, opt);

    sde::TimeGrid grid{0.0, sc.simulation.t_end, sc.simulation.n_steps};
    sde::NoiseSpec noise;
    noise.seed = sc.simulation.seed;
    const auto bundle = sde::simulate(rs.index_model, noise, grid, sc.simulation.n_paths,
                                      rs.scheme, opt.n_threads);

    sde::export_csv(bundle, dir + "/paths.csv");
    sde::export_binary(bundle, dir + "/paths.bin");

    json summary;
    summary["scenario_hash"] = sc.hash();
    summary["n_paths"] = sc.simulation.n_paths;
    summary["n_steps"] = sc.simulation.n_steps;
    summary["t_end"] = sc.simulation.t_end;
    for (int c = 0; c < bundle.n_components(); ++c) {
        const auto& m = bundle.states[c];
        const Eigen::VectorXd terminal = m.col(grid.n_steps);
        const double mean = terminal.mean();
        const double var =
            (terminal.array() - mean).square().sum() / std::max<Eigen::Index>(m.rows() - 1, 1);
        json cs{{"terminal_mean", mean},
                {"terminal_std", std::sqrt(var)},
                {"terminal_se", std::sqrt(var / m.rows())}};
        summary["components"][bundle.component_names[c]] = cs;
    }
    if (bundle.n_components() >= 2) {
        // time integral of the variance state, trapezoid per path
        const auto& x = bundle.states[1];
        const double dt = grid.dt();
        double acc = 0.0, acc2 = 0.0;
        for (Eigen::Index p = 0; p < x.rows(); ++p) {
            double s = 0.0;
            for (int k = 0; k < grid.n_steps; ++k) s += 0.5 * (x(p, k) + x(p, k + 1)) * dt;
            acc += s;
            acc2 += s * s;
        }
        const double mean = acc / x.rows();
        const double var = std::max(acc2 / x.rows() - mean * mean, 0.0);
        summary["integrated_state"] = {{"mean", mean}, {"se", std::sqrt(var / x.rows())}};
    }
    write_json(dir + "/summary.json", summary);
    log << "simulated " << sc.simulation.n_paths << " paths x " << sc.simulation.n_steps
        << " steps -> " << dir << "\n";
    return kExitPass;
}

int cmd_check(const Scenario& sc_in, const RunOptions& opt, std::ostream& log) {
    const Scenario sc = with_overrides(sc_in, opt);
    if (sc.checks.enabled.empty()) throw ScenarioError("check: no checks enabled");
    const auto rs = resolve(sc);
    const std::string dir = prepare_run_directory(sc, opt);

    auto enabled = [&](const std::string& name) {
        for (const auto& e : sc.checks.enabled)
            if (e == name) return true;
        return false;
    };
    auto tol = [&](const std::string& name) {
        return rs.default_tolerance(name) * opt.tolerance_scale;
    };

    const bool needs_vol_state = enabled("cc3") || enabled("cc4") || enabled("genpde") ||
                                 enabled("c1_pathwise");
    const bool is_stochvol = std::holds_alternative<models::StochVolSpec>(rs.index_model);
    if (needs_vol_state && !is_stochvol)
        throw ScenarioError("check: cc3/cc4/genpde/c1_pathwise need a stochastic-vol index model");

    sde::TimeGrid grid{0.0, sc.simulation.t_end, sc.simulation.n_steps};
    sde::NoiseSpec noise;
    noise.seed = sc.simulation.seed;
    const auto bundle = sde::simulate(rs.index_model, noise, grid, sc.simulation.n_paths,
                                      rs.scheme, opt.n_threads);

    consistency::ConsistencyReport report;
    report.scenario_hash = sc.hash();
    std::vector<consistency::ResidualField> fields;

    // h, shared by the diffusion/drift checks
    vixcore::VarianceFunction hf;
    if (needs_vol_state) {
        const auto& sv = std::get<models::StochVolSpec>(rs.index_model);
        if (sc.checks.h_source == "fk") {
            vixcore::FkConfig fk;
            fk.n_nodes = sc.checks.fk_nodes;
            fk.n_steps = sc.checks.fk_steps;
            hf = vixcore::h_by_fk(sv, sc.convention, fk);
            report.h_provenance = "fk";
        } else {
            vixcore::McConfig mc;
            mc.n_paths = sc.checks.mc_paths;
            mc.n_steps = sc.checks.mc_steps;
            mc.seed = sc.simulation.seed ^ 0x9e3779b9u;
            mc.n_threads = opt.n_threads;
            const auto x_grid = vixcore::default_state_grid(sv, sc.convention.tau_star, 41);
            hf = vixcore::h_by_mc(rs.index_model, sc.convention, x_grid, mc);
            report.h_provenance = "mc";
        }
        hf.to_json();  // ensure serializable before use
        write_json(dir + "/h.json", hf.to_json());
    }

    consistency::ImpliedVixPath ivp;
    if (enabled("cc4") || enabled("c1_pathwise")) {
        consistency::FamilyOptions fo;
        fo.with_xi = enabled("cc4");
        fo.lambda = rs.lambda.constant;
        ivp = consistency::implied_vix_path(rs.term_structure, bundle, fo);
    }

    if (enabled("cc1")) {
        auto r = consistency::check_cc1(rs.index_model, rs.lambda, bundle, tol("cc1"));
        report.rows.push_back(r.summary);
        fields.push_back(std::move(r.field));
    }
    if (enabled("cc2")) {
        auto r = consistency::check_cc2(rs.term_structure, rs.lambda, bundle, tol("cc2"));
        report.rows.push_back(r.summary);
        fields.push_back(std::move(r.field));
    }
    if (enabled("cc3")) {
        auto r = consistency::check_cc3(rs.term_structure, std::get<models::StochVolSpec>(rs.index_model),
                                        hf, bundle, tol("cc3"));
        report.rows.push_back(r.summary);
        fields.push_back(std::move(r.field));
    }
    if (enabled("cc4")) {
        auto r = consistency::check_cc4(rs.term_structure, std::get<models::StochVolSpec>(rs.index_model),
                                        hf, bundle, rs.lambda, ivp, tol("cc4"));
        report.rows.push_back(r.instantaneous.summary);
        report.rows.push_back(r.integrated.summary);
        fields.push_back(std::move(r.instantaneous.field));
    }
    if (enabled("genpde")) {
        auto r = consistency::check_genpde(hf, std::get<models::StochVolSpec>(rs.index_model),
                                           rs.term_structure, 8, tol("genpde"));
        report.rows.push_back(r.summary);
        fields.push_back(std::move(r.field));
    }
    if (enabled("c1_pathwise")) {
        auto r = consistency::check_c1_pathwise(std::get<models::StochVolSpec>(rs.index_model), hf,
                                                bundle, ivp, tol("c1_pathwise"));
        report.rows.push_back(r.summary);
        fields.push_back(std::move(r.field));
    }
    if (enabled("martingale")) {
        sde::NoiseSpec mnoise;
        mnoise.dim = rs.term_structure.n_factors;
        mnoise.seed = sc.simulation.seed;
        mnoise.stream_id = 1;
        const auto minc = sde::generate_increments(mnoise, grid, sc.checks.martingale_paths,
                                                   opt.n_threads);
        sde::PathBundle mbundle;
        mbundle.grid = grid;
        mbundle.noise = mnoise;
        mbundle.increments = minc;
        const auto r = consistency::martingale_diagnostic(rs.term_structure, mbundle, rs.lambda,
                                                          sc.checks.martingale_maturities);
        report.rows.push_back(r.summary);
        json rows = json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"T", row.maturity},
                            {"drift", row.drift},
                            {"ci_half_width", row.ci_half_width},
                            {"contains_zero", row.contains_zero}});
        write_json(dir + "/martingale.json",
                   json{{"rows", rows},
                        {"density_mean", r.density_mean},
                        {"density_min", r.density_min}});
    }

    write_json(dir + "/report.json", report.to_json());
    write_text(dir + "/report.txt", report.to_table());
    consistency::write_residual_csv(fields, dir + "/residuals.csv");
    log << report.to_table();
    log << (report.all_pass() ? "ALL PASS" : "CHECK FAILURE") << " -> " << dir << "\n";
    return report.all_pass() ? kExitPass : kExitCheckFailed;
}

int cmd_export_h(const Scenario& sc_in, const RunOptions& opt, std::ostream& log) {
    const Scenario sc = with_overrides(sc_in, opt);
    const auto rs = resolve(sc);
    if (!std::holds_alternative<models::StochVolSpec>(rs.index_model))
        throw ScenarioError("export-h: needs a stochastic-vol index model");
    const auto& sv = std::get<models::StochVolSpec>(rs.index_model);
    const std::string dir = prepare_run_directory(sc, opt);

    vixcore::VarianceFunction hf;
    if (sc.checks.h_source == "fk") {
        vixcore::FkConfig fk;
        fk.n_nodes = sc.checks.fk_nodes;
        fk.n_steps = sc.checks.fk_steps;
        hf = vixcore::h_by_fk(sv, sc.convention, fk);
    } else {
        vixcore::McConfig mc;
        mc.n_paths = sc.checks.mc_paths;
        mc.n_steps = sc.checks.mc_steps;
        mc.seed = sc.simulation.seed ^ 0x9e3779b9u;
        mc.n_threads = opt.n_threads;
        hf = vixcore::h_by_mc(rs.index_model, sc.convention,
                              vixcore::default_state_grid(sv, sc.convention.tau_star, 41), mc);
    }
    write_json(dir + "/h.json", hf.to_json());
    log << "h on [" << hf.x_min() << ", " << hf.x_max() << "], h(x0) = " << hf(sv.x0) << " -> "
        << dir << "/h.json\n";
    return kExitPass;
}

} // namespace vixlab::scenario
