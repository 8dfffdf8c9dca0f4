#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "cnf/coeff_search.hpp"
#include "cnf/outage_sim.hpp"
#include "cnf/rng.hpp"

using cnf::ChannelVector;
using cnf::Complex;
using cnf::Snr;
namespace outage = cnf::outage;

namespace {

outage::Matrix2 random_draw(cnf::rng::Stream& rng) {
    outage::Matrix2 h;
    for (auto& row : h)
        for (auto& v : row) v = rng.next_cgaussian();
    return h;
}

} // namespace

TEST_CASE("mimo strategies: structured channels") {
    // s = 1 is excluded: there the matched equation only ties the single-user
    // one per row, and the tie-break can pick parallel equations across rows.
    double c = 4.0;
    for (double s : {2.0, 10.0}) {
        outage::Matrix2 had{{{Complex{1, 0}, Complex{1, 0}},
                             {Complex{1, 0}, Complex{-1, 0}}}};
        auto r = outage::mimo_strategy_rates(had, Snr::from_linear(s), c);
        // Matching the coefficients to the rows achieves log2(1/2 + SNR) at
        // each relay, and the rows are independent, so the equation strategy
        // does at least that well.
        double matched = std::log2(0.5 + s);
        CHECK(r.comp >= std::min(matched, c) - 1e-9);
        CHECK(r.comp_nz >= std::min(matched, c) - 1e-9);
        // Each row also supports the matched equation directly.
        for (const auto& row : had) {
            auto best = cnf::search::best_equation(ChannelVector({row[0], row[1]}),
                                                   Snr::from_linear(s));
            REQUIRE(best.has_value());
            CHECK(best->rate_bits >= matched - 1e-9);
        }
    }

    // Diagonal channel at huge power: each relay decodes its own message and
    // the bit pipes become the bottleneck.
    outage::Matrix2 ident{{{Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{1, 0}}}};
    auto r = outage::mimo_strategy_rates(ident, Snr::from_linear(1e6), 2.0);
    CHECK(r.df == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("mimo strategies: per-draw ordering and clamps") {
    cnf::rng::Stream rng(51);
    double c = 2.0;
    for (int t = 0; t < 100; ++t) {
        auto h = random_draw(rng);
        double s = std::pow(10.0, 2.5 * rng.next_unit());
        auto r = outage::mimo_strategy_rates(h, Snr::from_linear(s), c);
        for (double v : {r.comp, r.comp_nz, r.df, r.cf, r.upper}) {
            CHECK(v >= 0.0);
            CHECK(v <= c + 1e-12);
        }
        CHECK(r.comp <= r.upper + 1e-9);
        CHECK(r.comp_nz <= r.upper + 1e-9);
        CHECK(r.df <= r.upper + 1e-9);
        CHECK(r.cf <= r.upper + 1e-9);
        // The diagonal-nonzero variant can beat the free one: forcing the
        // diagonal entries steers the two relays toward independent equations,
        // while the free search may pick parallel ones and score zero.
    }
}

TEST_CASE("two-way strategies: symmetric gains and degenerate power") {
    for (double s : {1.0, 5.0, 20.0}) {
        auto r = outage::twoway_strategy_rates({1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0},
                                               Snr::from_linear(s), Snr::from_linear(2.0 * s));
        double bc = std::log2(1.0 + 2.0 * s);
        CHECK(r.comp >= std::min(bc, std::max(0.0, std::log2(0.5 + s))) - 1e-9);
        CHECK(r.comp <= r.upper + 1e-9);
        CHECK(r.df <= r.upper + 1e-9);
        CHECK(r.af <= r.upper + 1e-9);
    }

    auto zero = outage::twoway_strategy_rates({1.0, 0.0}, {0.5, 0.5}, {1.0, 0.0}, {2.0, 0.0},
                                              Snr::from_linear(0.0), Snr::from_linear(0.0));
    CHECK(zero.comp == 0.0);
    CHECK(zero.df == 0.0);
    CHECK(zero.af == 0.0);
    CHECK(zero.upper == 0.0);
}

TEST_CASE("two-way strategies: equations never lose to full decoding") {
    cnf::rng::Stream rng(52);
    for (int t = 0; t < 1000; ++t) {
        Complex h11 = rng.next_cgaussian(), h12 = rng.next_cgaussian();
        Complex h3 = rng.next_cgaussian(), h4 = rng.next_cgaussian();
        double s = std::pow(10.0, 3.0 * rng.next_unit());
        auto r = outage::twoway_strategy_rates(h11, h12, h3, h4, Snr::from_linear(s),
                                               Snr::from_linear(2.0 * s));
        CHECK(r.comp >= r.df - 1e-9);
        CHECK(r.comp <= r.upper + 1e-9);
        CHECK(r.comp >= 0.0);
    }
}

TEST_CASE("outage quantile estimator") {
    CHECK(outage::outage_rate({1.25, 1.25, 1.25}, 0.5) == doctest::Approx(1.25));
    CHECK(outage::outage_rate({10, 9, 8, 7, 6, 5, 4, 3, 2, 1}, 0.25) == doctest::Approx(3.0));
    CHECK(outage::outage_rate({5.0}, 0.5) == doctest::Approx(5.0));

    cnf::rng::Stream rng(53);
    std::vector<double> u(10000);
    for (auto& v : u) v = rng.next_unit();
    CHECK(std::abs(outage::outage_rate(u, 0.5) - 0.5) < 0.02);

    CHECK_THROWS_AS(outage::outage_rate({}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(outage::outage_rate({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(outage::outage_rate({1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic and reuse fading across the grid") {
    outage::MimoConfig cfg{2.0, 0.25, 500, 99};
    std::vector<double> grid{0.0, 10.0, 20.0};
    auto c1 = outage::sweep_mimo(cfg, grid);
    auto c2 = outage::sweep_mimo(cfg, grid);
    CHECK(outage::mimo_curve_csv(c1) == outage::mimo_curve_csv(c2));

    // With one trial the curve is that single draw's strategy rates, so two
    // equal grid points must give identical values.
    outage::MimoConfig one{2.0, 0.25, 1, 7};
    auto flat = outage::sweep_mimo(one, {12.0, 12.0});
    CHECK(flat.rates[0].comp == flat.rates[1].comp);
    CHECK(flat.rates[0].df == flat.rates[1].df);
    CHECK(flat.rates[0].cf == flat.rates[1].cf);
    CHECK(flat.rates[0].upper == flat.rates[1].upper);

    outage::TwoWayConfig tcfg{2.0, 1.0 / 3.0, 400, 21};
    auto t1 = outage::sweep_twoway(tcfg, grid);
    auto t2 = outage::sweep_twoway(tcfg, grid);
    CHECK(outage::twoway_curve_csv(t1) == outage::twoway_curve_csv(t2));
}

TEST_CASE("outage curves rise with power") {
    outage::MimoConfig cfg{2.0, 0.25, 2000, 5};
    auto curve = outage::sweep_mimo(cfg, {0.0, 8.0, 16.0, 24.0});
    for (std::size_t i = 1; i < curve.rates.size(); ++i) {
        CHECK(curve.rates[i].comp >= curve.rates[i - 1].comp - 0.05);
        CHECK(curve.rates[i].df >= curve.rates[i - 1].df - 0.05);
        CHECK(curve.rates[i].cf >= curve.rates[i - 1].cf - 0.05);
        CHECK(curve.rates[i].upper >= curve.rates[i - 1].upper - 0.05);
    }
    outage::TwoWayConfig tcfg{2.0, 1.0 / 3.0, 2000, 5};
    auto tcurve = outage::sweep_twoway(tcfg, {0.0, 10.0, 20.0});
    for (std::size_t i = 1; i < tcurve.rates.size(); ++i) {
        CHECK(tcurve.rates[i].comp >= tcurve.rates[i - 1].comp - 0.05);
        CHECK(tcurve.rates[i].df >= tcurve.rates[i - 1].df - 0.05);
    }
}

TEST_CASE("rank failure probability") {
    CHECK(outage::rank_failure_probability(Snr::from_linear(0.0), 100, 3, false) ==
          doctest::Approx(1.0));
    double un = outage::rank_failure_probability(Snr::from_db(10.0), 4000, 3, false);
    double con = outage::rank_failure_probability(Snr::from_db(10.0), 4000, 3, true);
    CHECK(con < un);
    CHECK(un == outage::rank_failure_probability(Snr::from_db(10.0), 4000, 3, false));

    // Stable across seeds within binomial noise.
    double other = outage::rank_failure_probability(Snr::from_db(10.0), 4000, 8, false);
    double sigma = std::sqrt(std::max(un * (1.0 - un), 1e-4) / 4000.0);
    CHECK(std::abs(un - other) < 3.0 * sigma + 3.0 * sigma);
}

TEST_CASE("curve CSV schemas and config JSON round trips") {
    outage::MimoConfig cfg{2.0, 0.25, 50, 11};
    auto curve = outage::sweep_mimo(cfg, {5.0});
    auto csv = outage::mimo_curve_csv(curve);
    CHECK(csv.rfind("snr_db,comp,comp_nz,df,cf,upper\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.back() == '\n');

    outage::TwoWayConfig tcfg{2.0, 1.0 / 3.0, 50, 11};
    auto tcsv = outage::twoway_curve_csv(outage::sweep_twoway(tcfg, {5.0}));
    CHECK(tcsv.rfind("snr_db,comp,df,af,upper\n", 0) == 0);

    auto mj = outage::mimo_config_json(cfg);
    auto mback = outage::mimo_config_from_json(mj);
    CHECK(mback.c == cfg.c);
    CHECK(mback.rho == cfg.rho);
    CHECK(mback.trials == cfg.trials);
    CHECK(mback.seed == cfg.seed);
    auto tj = outage::twoway_config_json(tcfg);
    auto tback = outage::twoway_config_from_json(tj);
    CHECK(tback.bc_factor == tcfg.bc_factor);
    CHECK(tback.rho == tcfg.rho);
    CHECK(tback.trials == tcfg.trials);
    CHECK(tback.seed == tcfg.seed);

    CHECK_THROWS_AS(outage::sweep_mimo(outage::MimoConfig{2.0, 1.5, 10, 1}, {0.0}),
                    std::invalid_argument);
}
