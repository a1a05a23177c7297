#include "vixlab/consistency/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vixlab::consistency {

bool ConsistencyReport::all_pass() const {
    for (const auto& r : rows)
        if (r.evaluated && !r.pass) return false;
    return true;
}

const ResidualSummary* ConsistencyReport::find(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return &r;
    return nullptr;
}

nlohmann::json ConsistencyReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
        rows_json.push_back({{"name", r.name},
                             {"max_abs", r.max_abs},
                             {"mean_abs", r.mean_abs},
                             {"max_at_t", r.max_at_t},
                             {"max_at_path", r.max_at_path},
                             {"tolerance", r.tolerance},
                             {"pass", r.pass},
                             {"evaluated", r.evaluated},
                             {"note", r.note}});
    }
    return nlohmann::json{{"scenario_hash", scenario_hash},
                          {"h_provenance", h_provenance},
                          {"checks", rows_json},
                          {"all_pass", all_pass()}};
}

std::string ConsistencyReport::to_table() const {
    std::ostringstream out;
    char buf[256];
    out << "check            max-resid    mean-resid   tolerance    verdict\n";
    out << "---------------- ------------ ------------ ------------ -------\n";
    for (const auto& r : rows) {
        if (!r.evaluated) {
            std::snprintf(buf, sizeof(buf), "%-16s %-12s %-12s %-12s %s\n", r.name.c_str(), "-",
                          "-", "-", "SKIP");
            out << buf;
            continue;
        }
        std::snprintf(buf, sizeof(buf), "%-16s %-12.4g %-12.4g %-12.4g %s\n", r.name.c_str(),
                      r.max_abs, r.mean_abs, r.tolerance, r.pass ? "PASS" : "FAIL");
        out << buf;
        if (!r.note.empty()) out << "    " << r.note << "\n";
    }
    return out.str();
}

void write_residual_csv(const std::vector<ResidualField>& fields, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "check,t,coordinate,residual\n";
    char buf[160];
    for (const auto& f : fields) {
        for (std::size_t i = 0; i < f.residual.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n", f.name.c_str(), f.t[i],
                          f.coordinate[i], f.residual[i]);
            out << buf;
        }
    }
}

} // namespace vixlab::consistency
