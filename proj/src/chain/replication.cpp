#include "vixlab/chain/replication.hpp"

#include "vixlab/math/trapezoid.hpp"

#include <stdexcept>
#include <vector>

namespace vixlab::chain {

namespace {

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

} // namespace

ReplicationWeights replication_weights(const PayoffFn& f, double y, const Eigen::VectorXd& grid) {
    if (grid.size() < 2) throw std::invalid_argument("replication: grid too small");
    if (y < grid[0] || y > grid[grid.size() - 1])
        throw std::invalid_argument("replication: anchor outside grid");

    ReplicationWeights w;
    w.anchor = y;
    w.value_at_anchor = f.value(y);
    w.linear_coeff = f.first(y);
    w.grid = grid;

    std::vector<double> pk, ck;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (grid[i] <= y) pk.push_back(grid[i]);
        if (grid[i] >= y) ck.push_back(grid[i]);
    }
    if (pk.empty() || pk.back() < y) pk.push_back(y);
    if (ck.empty() || ck.front() > y) ck.insert(ck.begin(), y);

    w.put_strikes = to_vec(pk);
    w.call_strikes = to_vec(ck);
    w.put_weights.resize(w.put_strikes.size());
    w.call_weights.resize(w.call_strikes.size());
    for (Eigen::Index i = 0; i < w.put_strikes.size(); ++i)
        w.put_weights[i] = f.second(w.put_strikes[i]);
    for (Eigen::Index i = 0; i < w.call_strikes.size(); ++i)
        w.call_weights[i] = f.second(w.call_strikes[i]);
    return w;
}

double apply_replication(const ReplicationWeights& w, double x) {
    Eigen::VectorXd put_payoff(w.put_strikes.size()), call_payoff(w.call_strikes.size());
    for (Eigen::Index i = 0; i < w.put_strikes.size(); ++i)
        put_payoff[i] = std::max(w.put_strikes[i] - x, 0.0) * w.put_weights[i];
    for (Eigen::Index i = 0; i < w.call_strikes.size(); ++i)
        call_payoff[i] = std::max(x - w.call_strikes[i], 0.0) * w.call_weights[i];
    return w.value_at_anchor + w.linear_coeff * (x - w.anchor) +
           trapezoid(w.put_strikes, put_payoff) + trapezoid(w.call_strikes, call_payoff);
}

} // namespace vixlab::chain
