#include "vixlab/chain/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vixlab::chain {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

double parse_field(const std::string& tok, const std::string& path, int line, const char* name) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        std::ostringstream msg;
        msg << path << ": line " << line << ": bad value for " << name << ": '" << tok << "'";
        throw ParseError(msg.str());
    }
}

void apply_sidecar(OptionChain& chain, const json& j, const std::string& path) {
    try {
        chain.days_to_expiry = j.at("days_to_expiry").get<int>();
        chain.rate = j.at("rate").get<double>();
        chain.spot_time = j.value("spot_time", std::string{});
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (chain.days_to_expiry <= 0) throw ParseError(path + ": days_to_expiry must be > 0");
    chain.expiry_time = chain.days_to_expiry / 365.0;
}

void sort_and_validate(OptionChain& chain, const std::string& path) {
    std::sort(chain.rows.begin(), chain.rows.end(),
              [](const StrikeRow& a, const StrikeRow& b) { return a.strike < b.strike; });
    try {
        chain.validate();
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace

OptionChain load_chain_csv(const std::string& csv_path, const std::string& sidecar_path) {
    std::ifstream in(csv_path);
    if (!in) throw ParseError("cannot open " + csv_path);

    OptionChain chain;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "strike,call_bid,call_ask,put_bid,put_ask")
                throw ParseError(csv_path + ": line 1: unexpected header '" + line + "'");
            continue;
        }
        std::istringstream row(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(row, tok, ',')) toks.push_back(tok);
        if (toks.size() != 5) {
            std::ostringstream msg;
            msg << csv_path << ": line " << line_no << ": expected 5 fields, got " << toks.size();
            throw ParseError(msg.str());
        }
        StrikeRow r;
        r.strike = parse_field(toks[0], csv_path, line_no, "strike");
        r.call_bid = parse_field(toks[1], csv_path, line_no, "call_bid");
        r.call_ask = parse_field(toks[2], csv_path, line_no, "call_ask");
        r.put_bid = parse_field(toks[3], csv_path, line_no, "put_bid");
        r.put_ask = parse_field(toks[4], csv_path, line_no, "put_ask");
        chain.rows.push_back(r);
    }
    apply_sidecar(chain, load_json_file(sidecar_path), sidecar_path);
    sort_and_validate(chain, csv_path);
    return chain;
}

OptionChain load_chain_json(const std::string& path) {
    const json j = load_json_file(path);
    OptionChain chain;
    apply_sidecar(chain, j, path);
    try {
        for (const auto& q : j.at("quotes")) {
            StrikeRow r;
            r.strike = q.at("strike").get<double>();
            r.call_bid = q.at("call_bid").get<double>();
            r.call_ask = q.at("call_ask").get<double>();
            r.put_bid = q.at("put_bid").get<double>();
            r.put_ask = q.at("put_ask").get<double>();
            chain.rows.push_back(r);
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    sort_and_validate(chain, path);
    return chain;
}

OptionChain load_chain(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return load_chain_json(path);
    std::string sidecar = path;
    const auto dot = sidecar.find_last_of('.');
    if (dot != std::string::npos) sidecar.erase(dot);
    sidecar += ".json";
    return load_chain_csv(path, sidecar);
}

void save_chain_csv(const OptionChain& chain, const std::string& csv_path,
                    const std::string& sidecar_path) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << "strike,call_bid,call_ask,put_bid,put_ask\n";
    char buf[160];
    for (const auto& r : chain.rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", r.strike, r.call_bid,
                      r.call_ask, r.put_bid, r.put_ask);
        out << buf;
    }
    json side{{"days_to_expiry", chain.days_to_expiry},
              {"rate", chain.rate},
              {"spot_time", chain.spot_time}};
    std::ofstream sout(sidecar_path);
    if (!sout) throw std::runtime_error("cannot write " + sidecar_path);
    sout << side.dump(2) << "\n";
}

nlohmann::json computation_report(const VixComputation& v) {
    json per_strike = json::array();
    for (const auto& c : v.per_strike_contribution)
        per_strike.push_back({{"strike", c.strike},
                              {"delta_k", c.delta_k},
                              {"theta", c.theta},
                              {"weight", c.weight}});
    return json{{"forward", v.forward},
                {"k0", v.k0},
                {"included_strikes", v.included_strikes},
                {"per_strike_contribution", per_strike},
                {"sub_index", v.sub_index}};
}

} // namespace vixlab::chain
