#include "vixlab/sde/path_bundle.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vixlab::sde {

namespace {

constexpr char kMagic[8] = {'V', 'I', 'X', 'P', 'A', 'T', 'H', '1'};

void write_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint64_t read_u64(std::ifstream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}
double read_f64(std::ifstream& in) {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

void write_matrix(std::ofstream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index p = 0; p < m.rows(); ++p)
        for (Eigen::Index k = 0; k < m.cols(); ++k) write_f64(out, m(p, k));
}

void read_matrix(std::ifstream& in, Eigen::MatrixXd& m) {
    for (Eigen::Index p = 0; p < m.rows(); ++p)
        for (Eigen::Index k = 0; k < m.cols(); ++k) m(p, k) = read_f64(in);
}

} // namespace

PathBundle girsanov_tilt(const PathBundle& bundle, const Eigen::VectorXd& lambda) {
    if (lambda.size() != bundle.n_factors())
        throw std::invalid_argument("girsanov tilt: lambda dimension mismatch");
    PathBundle out = bundle;
    const Eigen::MatrixXd B = psd_factor(bundle.noise.resolved_correlation());
    const Eigen::VectorXd shift = B * lambda * bundle.grid.dt();
    for (int f = 0; f < bundle.n_factors(); ++f) out.increments[f].array() -= shift[f];
    return out;
}

void export_csv(const PathBundle& bundle, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "path,step,t,component,value\n";
    char buf[128];
    for (int c = 0; c < bundle.n_components(); ++c) {
        const std::string name = c < static_cast<int>(bundle.component_names.size())
                                     ? bundle.component_names[c]
                                     : "c" + std::to_string(c);
        const auto& m = bundle.states[c];
        for (Eigen::Index p = 0; p < m.rows(); ++p) {
            for (Eigen::Index k = 0; k < m.cols(); ++k) {
                std::snprintf(buf, sizeof(buf), "%lld,%lld,%.17g,%s,%.17g\n",
                              static_cast<long long>(p), static_cast<long long>(k),
                              bundle.grid.time(static_cast<int>(k)), name.c_str(), m(p, k));
                out << buf;
            }
        }
    }
}

void export_binary(const PathBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(kMagic, sizeof(kMagic));
    write_u64(out, static_cast<std::uint64_t>(bundle.n_paths()));
    write_u64(out, static_cast<std::uint64_t>(bundle.grid.n_steps));
    write_u64(out, static_cast<std::uint64_t>(bundle.n_components()));
    write_u64(out, static_cast<std::uint64_t>(bundle.n_factors()));
    write_f64(out, bundle.grid.t0);
    write_f64(out, bundle.grid.t_end);
    for (const auto& m : bundle.states) write_matrix(out, m);
    for (const auto& m : bundle.increments) write_matrix(out, m);
}

PathBundle import_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error(path + ": bad magic, not a VIXPATH1 dump");
    PathBundle b;
    const auto n_paths = static_cast<Eigen::Index>(read_u64(in));
    b.grid.n_steps = static_cast<int>(read_u64(in));
    const int n_components = static_cast<int>(read_u64(in));
    const int n_factors = static_cast<int>(read_u64(in));
    b.grid.t0 = read_f64(in);
    b.grid.t_end = read_f64(in);
    b.noise.dim = n_factors;
    b.states.resize(n_components);
    for (auto& m : b.states) {
        m.resize(n_paths, b.grid.n_steps + 1);
        read_matrix(in, m);
    }
    b.increments.resize(n_factors);
    for (auto& m : b.increments) {
        m.resize(n_paths, b.grid.n_steps);
        read_matrix(in, m);
    }
    if (!in) throw std::runtime_error(path + ": truncated VIXPATH1 dump");
    return b;
}

} // namespace vixlab::sde
