#include "vixlab/scenario/scenario.hpp"

#include "vixlab/vixcore/estimators.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace vixlab::scenario {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ScenarioError(where + ": unknown key '" + it.key() + "'");
}

double num(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ScenarioError(std::string("missing required field '") + key + "'");
    }
    if (!j[key].is_number()) throw ScenarioError(std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

const std::set<std::string> kKnownChecks = {"cc1",    "cc2",         "cc3",       "cc4",
                                            "genpde", "c1_pathwise", "martingale"};

} // namespace

std::string Scenario::canonical_json() const {
    json j;
    j["schema"] = schema;
    j["convention"] = {{"tau_star", convention.tau_star}, {"scale_N", convention.scale_N}};
    json params;
    for (const auto& [k, v] : index_model.params) params[k] = v;
    j["index_model"] = {{"type", index_model.type}, {"params", params}};
    j["term_structure"] = {{"type", term_structure.type},
                           {"beta_form", term_structure.beta_form},
                           {"beta_level", term_structure.beta_level},
                           {"beta_kappa", term_structure.beta_kappa},
                           {"curve_type", term_structure.curve_type},
                           {"curve_v0", term_structure.curve_v0},
                           {"curve_value", term_structure.curve_value},
                           {"mu_v", term_structure.mu_v},
                           {"t_star", term_structure.t_star}};
    j["simulation"] = {{"t_end", simulation.t_end},
                       {"n_steps", simulation.n_steps},
                       {"n_paths", simulation.n_paths},
                       {"seed", simulation.seed},
                       {"scheme", simulation.scheme}};
    json tol;
    for (const auto& [k, v] : checks.tolerances) tol[k] = v;
    j["checks"] = {{"enabled", checks.enabled},
                   {"tolerances", tol},
                   {"h_source", checks.h_source},
                   {"fk_nodes", checks.fk_nodes},
                   {"fk_steps", checks.fk_steps},
                   {"mc_paths", checks.mc_paths},
                   {"mc_steps", checks.mc_steps}};
    return j.dump();
}

std::string Scenario::hash() const {
    const std::string s = canonical_json();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(origin + ": " + e.what());
    }
    reject_unknown(j, {"schema", "convention", "index_model", "term_structure", "simulation",
                       "checks", "outputs"},
                   origin);

    Scenario sc;
    if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
        throw ScenarioError(origin + ": requires \"schema\": 1");

    if (j.contains("convention")) {
        const auto& c = j["convention"];
        reject_unknown(c, {"tau_star", "scale_N"}, origin + ".convention");
        sc.convention.tau_star = num(c, "tau_star", 30.0 / 365.0);
        sc.convention.scale_N = num(c, "scale_N", 2e4);
    }

    if (!j.contains("index_model")) throw ScenarioError(origin + ": missing index_model");
    {
        const auto& m = j["index_model"];
        if (!m.contains("type")) throw ScenarioError(origin + ".index_model: missing type");
        sc.index_model.type = m["type"].get<std::string>();
        for (auto it = m.begin(); it != m.end(); ++it) {
            if (it.key() == "type") continue;
            if (!it.value().is_number())
                throw ScenarioError(origin + ".index_model: parameter '" + it.key() +
                                    "' must be a number");
            sc.index_model.params[it.key()] = it.value().get<double>();
        }
    }

    if (j.contains("term_structure")) {
        const auto& t = j["term_structure"];
        reject_unknown(t, {"type", "beta", "initial_curve", "mu_v", "t_star"},
                       origin + ".term_structure");
        auto& ts = sc.term_structure;
        ts.type = t.value("type", std::string("proportional"));
        if (ts.type != "proportional")
            throw ScenarioError(origin + ".term_structure: unknown type '" + ts.type + "'");
        if (t.contains("beta")) {
            const auto& b = t["beta"];
            reject_unknown(b, {"form", "level", "kappa"}, origin + ".term_structure.beta");
            ts.beta_form = b.value("form", std::string("constant"));
            ts.beta_level = num(b, "level");
            ts.beta_kappa = num(b, "kappa", 0.0);
            if (ts.beta_form != "constant" && ts.beta_form != "exp_decay")
                throw ScenarioError(origin + ": unknown beta form '" + ts.beta_form + "'");
        }
        if (t.contains("initial_curve")) {
            const auto& c = t["initial_curve"];
            reject_unknown(c, {"type", "v0", "gamma", "value", "T", "values"},
                           origin + ".term_structure.initial_curve");
            ts.curve_type = c.value("type", std::string("lognormal_consistent"));
            ts.curve_v0 = num(c, "v0", 0.0);
            ts.curve_value = num(c, "value", 0.0);
            if (c.contains("T")) ts.curve_T = c["T"].get<std::vector<double>>();
            if (c.contains("values")) ts.curve_val = c["values"].get<std::vector<double>>();
            static const std::set<std::string> kCurves = {"lognormal_consistent", "flat",
                                                          "matched", "tabulated"};
            if (!kCurves.count(ts.curve_type))
                throw ScenarioError(origin + ": unknown initial_curve type '" + ts.curve_type +
                                    "'");
        }
        ts.mu_v = num(t, "mu_v", 0.0);
        ts.t_star = num(t, "t_star", 0.0);
    }

    if (!j.contains("simulation")) throw ScenarioError(origin + ": missing simulation");
    {
        const auto& s = j["simulation"];
        reject_unknown(s, {"t_end", "n_steps", "n_paths", "seed", "scheme"},
                       origin + ".simulation");
        sc.simulation.t_end = num(s, "t_end");
        sc.simulation.n_steps = static_cast<int>(num(s, "n_steps"));
        sc.simulation.n_paths = static_cast<std::int64_t>(num(s, "n_paths"));
        if (!s.contains("seed")) throw ScenarioError(origin + ".simulation: seed is required");
        sc.simulation.seed = s["seed"].get<std::uint64_t>();
        sc.simulation.scheme = s.value("scheme", std::string("default"));
        if (sc.simulation.n_steps < 1) throw ScenarioError(origin + ": n_steps must be >= 1");
    }

    if (j.contains("checks")) {
        const auto& c = j["checks"];
        reject_unknown(c,
                       {"enabled", "tolerances", "h_source", "fk", "mc", "lambda",
                        "martingale_paths", "martingale_maturities"},
                       origin + ".checks");
        if (c.contains("enabled"))
            sc.checks.enabled = c["enabled"].get<std::vector<std::string>>();
        for (const auto& name : sc.checks.enabled)
            if (!kKnownChecks.count(name))
                throw ScenarioError(origin + ": unknown check '" + name + "'");
        if (c.contains("tolerances"))
            for (auto it = c["tolerances"].begin(); it != c["tolerances"].end(); ++it) {
                if (!kKnownChecks.count(it.key()))
                    throw ScenarioError(origin + ": tolerance for unknown check '" + it.key() +
                                        "'");
                sc.checks.tolerances[it.key()] = it.value().get<double>();
            }
        sc.checks.h_source = c.value("h_source", std::string("fk"));
        if (sc.checks.h_source != "fk" && sc.checks.h_source != "mc")
            throw ScenarioError(origin + ": h_source must be fk or mc");
        if (c.contains("fk")) {
            reject_unknown(c["fk"], {"n_nodes", "n_steps"}, origin + ".checks.fk");
            sc.checks.fk_nodes = static_cast<int>(num(c["fk"], "n_nodes", 400));
            sc.checks.fk_steps = static_cast<int>(num(c["fk"], "n_steps", 200));
        }
        if (c.contains("mc")) {
            reject_unknown(c["mc"], {"n_paths", "n_steps"}, origin + ".checks.mc");
            sc.checks.mc_paths = static_cast<std::int64_t>(num(c["mc"], "n_paths", 20000));
            sc.checks.mc_steps = static_cast<int>(num(c["mc"], "n_steps", 200));
        }
        if (c.contains("lambda")) {
            const auto v = c["lambda"].get<std::vector<double>>();
            sc.checks.lambda = Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
        }
        if (c.contains("martingale_paths"))
            sc.checks.martingale_paths = static_cast<std::int64_t>(num(c, "martingale_paths"));
        if (c.contains("martingale_maturities"))
            sc.checks.martingale_maturities = static_cast<int>(num(c, "martingale_maturities"));
    }

    if (j.contains("outputs")) {
        reject_unknown(j["outputs"], {"directory"}, origin + ".outputs");
        sc.output_directory = j["outputs"].value("directory", std::string("runs"));
    }

    sc.convention.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

namespace {

models::ModelSpec build_index_model(const IndexModelConfig& cfg) {
    auto p = [&](const char* key, double fallback) {
        auto it = cfg.params.find(key);
        return it == cfg.params.end() ? fallback : it->second;
    };
    auto require = [&](const char* key) {
        auto it = cfg.params.find(key);
        if (it == cfg.params.end())
            throw ScenarioError(std::string("index_model: missing parameter '") + key + "'");
        return it->second;
    };
    if (cfg.type == "heston") {
        models::HestonInputs in;
        in.kappa = require("kappa");
        in.theta = require("theta");
        in.eta = require("eta");
        in.v0 = require("v0");
        in.rho = p("rho", 0.0);
        in.f0 = p("f0", 100.0);
        return models::heston(in);
    }
    if (cfg.type == "cir_restricted") {
        models::CirRestrictedInputs in;
        in.alpha = require("alpha");
        in.gamma = require("gamma");
        in.x0 = require("x0");
        in.rho = p("rho", 0.0);
        in.f0 = p("f0", 100.0);
        return models::cir_restricted(in);
    }
    if (cfg.type == "lognormal_restricted")
        return models::lognormal_restricted(require("sigma0"), require("x0"), p("rho", 0.0),
                                            p("f0", 100.0));
    if (cfg.type == "gbm_index") {
        models::GbmIndexInputs in;
        in.sigma0 = require("sigma0");
        in.f0 = p("f0", 100.0);
        in.mu0 = p("mu0", 0.0);
        return models::gbm_index(in);
    }
    if (cfg.type == "cir_plain") {
        // mean-reverting square-root state without the drift restriction
        models::StochVolSpec spec;
        const double kappa = require("kappa"), theta = require("theta");
        spec.sigma = models::ScalarFn::sqrt_scaled(require("alpha"));
        spec.mu = models::ScalarFn::affine(kappa * theta, -kappa);
        spec.x0 = require("x0");
        spec.rho = p("rho", 0.0);
        spec.f0 = p("f0", 100.0);
        spec.validate();
        return spec;
    }
    if (cfg.type == "cir_restricted_biased") {
        // restricted drift plus an eps * sigma mis-specification
        models::CirRestrictedInputs in;
        in.alpha = require("alpha");
        in.gamma = require("gamma");
        in.x0 = require("x0");
        in.rho = p("rho", 0.0);
        in.f0 = p("f0", 100.0);
        const double eps = require("eps");
        models::StochVolSpec spec = models::cir_restricted(in);
        const auto base_mu = spec.mu;
        const auto sigma = spec.sigma;
        spec.mu = models::ScalarFn::from_callable(
            "biased", [base_mu, sigma, eps](double x) { return base_mu(x) + eps * sigma(x); },
            [base_mu, sigma, eps](double x) {
                return base_mu.deriv(x) + eps * sigma.deriv(x);
            });
        return spec;
    }
    throw ScenarioError("index_model: unknown type '" + cfg.type + "'");
}

} // namespace

double ResolvedScenario::default_tolerance(const std::string& check) const {
    auto it = config.checks.tolerances.find(check);
    if (it != config.checks.tolerances.end()) return it->second;
    // analytic identities get the tight default; MC/grid-backed checks the loose one
    if (check == "cc1" || check == "cc2") return 1e-6;
    return 1e-2;
}

ResolvedScenario resolve(const Scenario& sc) {
    ResolvedScenario out;
    out.config = sc;
    out.index_model = build_index_model(sc.index_model);

    const double t_star =
        sc.term_structure.t_star > 0.0 ? sc.term_structure.t_star : sc.simulation.t_end;
    if (t_star < sc.simulation.t_end)
        throw ScenarioError("term_structure: t_star must cover the simulation horizon");

    // beta descriptor
    const double level = sc.term_structure.beta_level;
    const double kap = sc.term_structure.beta_kappa;
    std::function<double(double, double)> beta;
    if (sc.term_structure.beta_form == "constant")
        beta = [level](double, double) { return level; };
    else
        beta = [level, kap](double t, double T) { return level * std::exp(-kap * (T - t)); };

    // initial curve
    models::ScalarFn curve;
    const auto& tc = sc.term_structure;
    if (tc.curve_type == "flat") {
        curve = models::ScalarFn::constant(tc.curve_value);
    } else if (tc.curve_type == "lognormal_consistent") {
        double v0 = tc.curve_v0;
        if (v0 <= 0.0) {
            if (!std::holds_alternative<models::StochVolSpec>(out.index_model))
                throw ScenarioError("initial_curve: lognormal_consistent needs a vol state");
            const auto& sv = std::get<models::StochVolSpec>(out.index_model);
            v0 = std::sqrt(sc.convention.scale_N / 2.0 * sv.x0);
        }
        const double g = level;
        curve = models::ScalarFn::from_callable(
            "lognormal_consistent",
            [v0, g](double T) { return v0 * std::exp(-0.5 * g * g * T); },
            [v0, g](double T) { return -0.5 * g * g * v0 * std::exp(-0.5 * g * g * T); });
    } else if (tc.curve_type == "tabulated") {
        if (tc.curve_T.size() != tc.curve_val.size() || tc.curve_T.size() < 2)
            throw ScenarioError("initial_curve: tabulated needs matching T/values arrays");
        curve = models::ScalarFn::tabulated(
            Eigen::Map<const Eigen::VectorXd>(tc.curve_T.data(), tc.curve_T.size()),
            Eigen::Map<const Eigen::VectorXd>(tc.curve_val.data(), tc.curve_val.size()));
    } else {  // matched: E[sqrt(h(X_T))] by Monte Carlo at a derived seed
        if (!std::holds_alternative<models::StochVolSpec>(out.index_model))
            throw ScenarioError("initial_curve: matched needs a stochastic-vol index model");
        const auto& sv = std::get<models::StochVolSpec>(out.index_model);
        vixcore::FkConfig fk;
        fk.n_nodes = sc.checks.fk_nodes;
        fk.n_steps = sc.checks.fk_steps;
        const auto hf = vixcore::h_by_fk(sv, sc.convention, fk);

        const int n_nodes = 65;
        sde::TimeGrid grid{0.0, t_star, 256};
        sde::NoiseSpec noise;
        noise.seed = sc.simulation.seed ^ 0x5bd1e995u;
        const auto bundle = sde::simulate(out.index_model, noise, grid, sc.checks.mc_paths,
                                          sde::default_scheme(out.index_model));
        Eigen::VectorXd ts_nodes(n_nodes), ts_vals(n_nodes);
        for (int i = 0; i < n_nodes; ++i) {
            const int k = static_cast<int>(std::lround(double(grid.n_steps) * i / (n_nodes - 1)));
            ts_nodes[i] = grid.time(k);
            double acc = 0.0;
            for (Eigen::Index p = 0; p < bundle.n_paths(); ++p) {
                const double x =
                    std::min(std::max(bundle.states[1](p, k), hf.x_min()), hf.x_max());
                acc += std::sqrt(hf(x));
            }
            ts_vals[i] = acc / bundle.n_paths();
        }
        curve = models::ScalarFn::tabulated(ts_nodes, ts_vals);
    }

    out.term_structure = models::proportional_termstructure(curve, beta, t_star);
    if (sc.term_structure.mu_v != 0.0) {
        const double muv = sc.term_structure.mu_v;
        out.term_structure.mu_v = [muv](double, double) { return muv; };
    }

    // scheme
    if (sc.simulation.scheme == "default")
        out.scheme = sde::default_scheme(out.index_model);
    else if (sc.simulation.scheme == "euler")
        out.scheme = sde::Scheme::euler;
    else if (sc.simulation.scheme == "full_truncation_euler")
        out.scheme = sde::Scheme::full_truncation_euler;
    else if (sc.simulation.scheme == "milstein")
        out.scheme = sde::Scheme::milstein;
    else
        throw ScenarioError("simulation: unknown scheme '" + sc.simulation.scheme + "'");

    if (sc.checks.lambda.size() > 0) out.lambda.constant = sc.checks.lambda;
    return out;
}

} // namespace vixlab::scenario
