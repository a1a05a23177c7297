#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "vixlab/chain/cboe.hpp"
#include "vixlab/chain/replication.hpp"
#include "vixlab/math/trapezoid.hpp"
#include "vixlab/pricing/black.hpp"

#include <cmath>

using namespace vixlab;
using chain::OptionChain;
using chain::StrikeRow;

namespace {

StrikeRow row(double k, double c, double p) {
    StrikeRow r;
    r.strike = k;
    r.call_bid = r.call_ask = c;
    r.put_bid = r.put_ask = p;
    return r;
}

OptionChain small_chain(std::vector<StrikeRow> rows, double tau, double rate = 0.0) {
    OptionChain c;
    c.rows = std::move(rows);
    c.expiry_time = tau;
    c.days_to_expiry = static_cast<int>(std::lround(tau * 365.0));
    c.rate = rate;
    return c;
}

} // namespace

TEST_CASE("forward level: parity pins the forward at the strike when C = P") {
    auto c = small_chain({row(90, 12, 1), row(100, 5, 5), row(110, 1, 12)}, 30.0 / 365.0);
    CHECK(chain::compute_forward_pcp(c) == doctest::Approx(100.0));
}

TEST_CASE("forward level: zero-rate case is k0 plus the parity gap") {
    auto c = small_chain({row(90, 18, 1), row(100, 10, 5), row(110, 1, 12)}, 30.0 / 365.0);
    // k0 = 100 minimizes |C - P|; C - P = 5
    CHECK(chain::compute_forward_pcp(c) == doctest::Approx(105.0));
}

TEST_CASE("forward level: rate growth applied to the parity gap") {
    const double tau = 30.0 / 365.0, r = 0.05;
    auto c = small_chain({row(1900, 150, 20), row(2000, 50, 37.5), row(2100, 10, 80)}, tau, r);
    const long double expected = 2000.0L + std::exp((long double)r * (long double)(30.0L / 365.0L)) * 12.5L;
    CHECK(chain::compute_forward_pcp(c) == doctest::Approx((double)expected).epsilon(1e-9));
    CHECK((double)expected == doctest::Approx(2012.551).epsilon(1e-4));
}

TEST_CASE("forward level: tie breaks to the lower strike") {
    auto c = small_chain({row(95, 7, 4), row(105, 4, 7)}, 0.1);
    CHECK(chain::compute_forward_pcp(c) == doctest::Approx(95.0 + 3.0));
}

TEST_CASE("forward level: empty chain is an error") {
    OptionChain c;
    c.expiry_time = 0.1;
    CHECK_THROWS_WITH_AS(chain::compute_forward_pcp(c), "option chain: no strikes",
                         std::invalid_argument);
}

TEST_CASE("strike selection: all bids positive keeps every strike") {
    auto c = small_chain({row(80, 21, 1), row(90, 12, 2), row(100, 5, 5), row(110, 2, 12)}, 0.1);
    const auto idx = chain::select_strikes(c, 100.0);
    CHECK(idx == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("strike selection: two consecutive zero put bids stop the downward scan") {
    // puts at 80 and 85 have zero bids (consecutive); 70 and 75 are live but
    // unreachable once the scan stops
    auto c = small_chain({row(70, 31, 0.5), row(75, 26, 0.8), row(80, 21, 0), row(85, 16, 0),
                          row(90, 12, 2), row(100, 5, 5)},
                         0.1);
    const auto idx = chain::select_strikes(c, 100.0);
    CHECK(idx == std::vector<std::size_t>{4, 5});
}

TEST_CASE("strike selection: alternating zero bids only drop themselves") {
    auto c = small_chain({row(70, 31, 0.5), row(75, 26, 0), row(80, 21, 0.7), row(85, 16, 0),
                          row(90, 12, 2), row(100, 5, 5)},
                         0.1);
    const auto idx = chain::select_strikes(c, 100.0);
    CHECK(idx == std::vector<std::size_t>{0, 2, 4, 5});
}

TEST_CASE("strike selection: k0 must be a strike") {
    auto c = small_chain({row(90, 12, 2), row(100, 5, 5)}, 0.1);
    CHECK_THROWS_AS(chain::select_strikes(c, 95.0), std::invalid_argument);
}

TEST_CASE("dense flat-vol chain reproduces the flat vol in vol points") {
    pricing::SyntheticChainConfig cfg;
    cfg.days_to_expiry = 30;
    const auto c = pricing::make_black_chain(cfg);
    const auto v = chain::compute_single_expiry_vix(c);
    CHECK(v.sub_index == doctest::Approx(20.0).epsilon(0.0025));
    CHECK(std::abs(v.sub_index - 20.0) < 0.05);
    CHECK(v.forward == doctest::Approx(100.0));
    CHECK(v.k0 == doctest::Approx(100.0));
}

TEST_CASE("truncated sum matches a brute-force evaluation over the selected set") {
    pricing::SyntheticChainConfig cfg;
    cfg.rel_spacing = 0.004;
    auto c = pricing::make_black_chain(cfg);
    const auto full = chain::compute_single_expiry_vix(c);

    // kill two consecutive put bids far out of the money
    const std::size_t cut = 20;
    c.rows[cut].put_bid = 0.0;
    c.rows[cut + 1].put_bid = 0.0;
    const auto truncated = chain::compute_single_expiry_vix(c);

    // brute-force evaluation over the hand-selected indices
    const std::size_t i0 = chain::atm_strike_index(c);
    const double tau = c.expiry_time;
    double sum = 0.0;
    std::vector<std::size_t> idx;
    for (std::size_t i = cut + 2; i < c.rows.size(); ++i) idx.push_back(i);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const auto& rw = c.rows[idx[j]];
        double dk;
        if (j == 0)
            dk = c.rows[idx[1]].strike - rw.strike;
        else if (j + 1 == idx.size())
            dk = rw.strike - c.rows[idx[j - 1]].strike;
        else
            dk = 0.5 * (c.rows[idx[j + 1]].strike - c.rows[idx[j - 1]].strike);
        double theta;
        if (idx[j] == i0)
            theta = 0.5 * (rw.call_mid() + rw.put_mid());
        else
            theta = rw.strike < c.rows[i0].strike ? rw.put_mid() : rw.call_mid();
        sum += 2.0 / tau * dk / (rw.strike * rw.strike) * theta;
    }
    const double brute = 100.0 * std::sqrt(sum);
    CHECK(truncated.sub_index == doctest::Approx(brute).epsilon(1e-12));
    CHECK(truncated.sub_index < full.sub_index);
    CHECK(truncated.included_strikes.front() == doctest::Approx(c.rows[cut + 2].strike));
}

TEST_CASE("single strike at the forward with worthless options gives zero") {
    auto c = small_chain({row(100, 0, 0)}, 30.0 / 365.0);
    const auto v = chain::compute_single_expiry_vix(c);
    CHECK(v.sub_index == doctest::Approx(0.0));
    CHECK(v.forward == doctest::Approx(100.0));
}

TEST_CASE("negative variance bracket raises instead of clamping") {
    // a large parity gap with a worthless strip forces the bracket negative
    auto c = small_chain({row(100, 10, 0)}, 30.0 / 365.0);
    CHECK_THROWS_WITH_AS(chain::compute_single_expiry_vix(c),
                         doctest::Contains("negative variance"), std::runtime_error);
}

TEST_CASE("30-day interpolation: hand case against high-precision arithmetic") {
    chain::VixComputation v1, v2;
    v1.sub_index = 18.0;
    v2.sub_index = 22.0;
    auto c1 = small_chain({row(100, 1, 1)}, 25.0 / 365.0);
    c1.days_to_expiry = 25;
    auto c2 = small_chain({row(100, 1, 1)}, 39.0 / 365.0);
    c2.days_to_expiry = 39;
    const double got = chain::interpolate_vix_30d(v1, v2, c1, c2);
    const long double expected = testsupport::interp_30d_oracle(18.0L, 25, 22.0L, 39);
    CHECK(got == doctest::Approx((double)expected).epsilon(1e-12));
}

TEST_CASE("30-day interpolation: boundary at exactly 30 days collapses to the sub-index") {
    chain::VixComputation v1, v2;
    v1.sub_index = 20.0;
    v2.sub_index = 20.0;
    auto c1 = small_chain({row(100, 1, 1)}, 30.0 / 365.0);
    c1.days_to_expiry = 30;
    auto c2 = small_chain({row(100, 1, 1)}, 37.0 / 365.0);
    c2.days_to_expiry = 37;
    CHECK(chain::interpolate_vix_30d(v1, v2, c1, c2) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("30-day interpolation: zero indices stay zero") {
    chain::VixComputation v1, v2;
    v1.sub_index = v2.sub_index = 0.0;
    auto c1 = small_chain({row(100, 1, 1)}, 25.0 / 365.0);
    c1.days_to_expiry = 25;
    auto c2 = small_chain({row(100, 1, 1)}, 39.0 / 365.0);
    c2.days_to_expiry = 39;
    CHECK(chain::interpolate_vix_30d(v1, v2, c1, c2) == doctest::Approx(0.0));
}

TEST_CASE("30-day interpolation: equal day counts are rejected") {
    chain::VixComputation v1, v2;
    v1.sub_index = v2.sub_index = 20.0;
    auto c1 = small_chain({row(100, 1, 1)}, 25.0 / 365.0);
    c1.days_to_expiry = 25;
    CHECK_THROWS_AS(chain::interpolate_vix_30d(v1, v2, c1, c1), std::invalid_argument);
}

TEST_CASE("replication: evaluation at the anchor returns f(y) exactly") {
    chain::PayoffFn f{[](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
                      [](double x) { return -1.0 / (x * x); }};
    Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(200, 10.0, 500.0);
    const auto w = chain::replication_weights(f, 100.0, grid);
    CHECK(chain::apply_replication(w, 100.0) == doctest::Approx(std::log(100.0)).epsilon(1e-15));
}

TEST_CASE("replication: log payoff decomposes to quadrature accuracy") {
    chain::PayoffFn f{[](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
                      [](double x) { return -1.0 / (x * x); }};
    const int n = static_cast<int>((1000.0 - 1.0) / 0.05) + 1;
    Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(n, 1.0, 1000.0);
    const auto w = chain::replication_weights(f, 100.0, grid);
    CHECK(chain::apply_replication(w, 120.0) == doctest::Approx(std::log(120.0)).epsilon(1e-6));
}

TEST_CASE("replication: quadratic payoff is exact on a matching grid") {
    chain::PayoffFn f{[](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                      [](double) { return 2.0; }};
    Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(2001, 0.0, 200.0);
    const auto w = chain::replication_weights(f, 50.0, grid);
    CHECK(chain::apply_replication(w, 80.0) == doctest::Approx(6400.0).epsilon(1e-6));
}

TEST_CASE("replication: anchor outside the grid is an error") {
    chain::PayoffFn f{[](double x) { return x; }, [](double) { return 1.0; },
                      [](double) { return 0.0; }};
    Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(10, 10.0, 20.0);
    CHECK_THROWS_AS(chain::replication_weights(f, 5.0, grid), std::invalid_argument);
}

TEST_CASE("property: discrete index converges monotonically under strike refinement") {
    double prev_err = 1e9;
    for (const double spacing : {0.004, 0.002, 0.001}) {
        pricing::SyntheticChainConfig cfg;
        cfg.rel_spacing = spacing;
        const auto v = chain::compute_single_expiry_vix(pricing::make_black_chain(cfg));
        const double err = std::abs(v.sub_index - 20.0);
        CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("property: the index is invariant under uniform rescaling") {
    pricing::SyntheticChainConfig cfg;
    cfg.rel_spacing = 0.004;
    auto c = pricing::make_black_chain(cfg);
    const auto base = chain::compute_single_expiry_vix(c);
    const double scale = 7.3;
    for (auto& r : c.rows) {
        r.strike *= scale;
        r.call_bid *= scale;
        r.call_ask *= scale;
        r.put_bid *= scale;
        r.put_ask *= scale;
    }
    const auto scaled = chain::compute_single_expiry_vix(c);
    CHECK(scaled.sub_index == doctest::Approx(base.sub_index).epsilon(1e-12));
}

TEST_CASE("property: OTM strip quadrature recovers the log-contract value") {
    // N/tau * int Theta/k^2 dk equals -(N/tau) E ln(F_T/F) = (100 sigma)^2
    const double sigma = 0.2, tau = 30.0 / 365.0, f0 = 100.0;
    const int n = 20000;
    Eigen::VectorXd k = Eigen::VectorXd::LinSpaced(n, 10.0, 1000.0);
    Eigen::VectorXd integrand(n);
    for (int i = 0; i < n; ++i) {
        const double theta = k[i] < f0 ? pricing::black_put(f0, k[i], sigma, tau)
                                       : pricing::black_call(f0, k[i], sigma, tau);
        integrand[i] = theta / (k[i] * k[i]);
    }
    const double v2 = 2e4 / tau * trapezoid(k, integrand);
    CHECK(std::sqrt(v2) == doctest::Approx(100.0 * sigma).epsilon(1e-4));
}
