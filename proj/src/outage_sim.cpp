#include "cnf/outage_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cnf/coeff_search.hpp"
#include "cnf/finite_field.hpp"
#include "cnf/parse.hpp"
#include "cnf/rng.hpp"

namespace cnf::outage {

namespace {

constexpr std::uint64_t kTagFade = 11;

double log2p1(double x) { return std::log2(1.0 + x); }

// Cut-set bound for a 2x2 MIMO channel at signal power s: per-column SIMO
// bounds and the half log-det sum bound.
double r_mimo(const Matrix2& g, double s) {
    double col1 = std::norm(g[0][0]) + std::norm(g[1][0]);
    double col2 = std::norm(g[0][1]) + std::norm(g[1][1]);
    double g11 = std::norm(g[0][0]) + std::norm(g[0][1]);
    double g22 = std::norm(g[1][0]) + std::norm(g[1][1]);
    Complex cross = g[0][0] * std::conj(g[1][0]) + g[0][1] * std::conj(g[1][1]);
    double det = (1.0 + s * g11) * (1.0 + s * g22) - s * s * std::norm(cross);
    return std::min({log2p1(col1 * s), log2p1(col2 * s), 0.5 * std::log2(det)});
}

std::vector<Matrix2> draw_channels(std::uint64_t seed, std::uint64_t trials) {
    std::vector<Matrix2> h(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        rng::Stream s(seed, kTagFade, t);
        for (auto& row : h[t])
            for (auto& v : row) v = s.next_cgaussian();
    }
    return h;
}

// Deterministic parallel map over trial indices into a preallocated array.
template <typename F>
void parallel_trials(std::uint64_t trials, F&& per_trial) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || trials < 256) {
        for (std::uint64_t t = 0; t < trials; ++t) per_trial(t);
        return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &per_trial] {
            for (std::uint64_t t = lo; t < hi; ++t) per_trial(t);
        });
    }
    for (auto& th : pool) th.join();
}

void check_rho(double rho) {
    if (!(rho > 0.0) || !(rho < 1.0)) throw std::invalid_argument("rho must be in (0, 1)");
}

} // namespace

MimoRates mimo_strategy_rates(const Matrix2& H, Snr snr, double C) {
    double s = snr.linear;
    MimoRates r;

    ChannelVector h1({H[0][0], H[0][1]});
    ChannelVector h2({H[1][0], H[1][1]});

    auto combine = [&](const std::optional<search::BestEquation>& b1,
                       const std::optional<search::BestEquation>& b2) {
        if (!b1 || !b2) return 0.0;
        ff::GaussianIntMatrix A{2, 2, {b1->a[0], b1->a[1], b2->a[0], b2->a[1]}};
        if (!ff::complex_full_rank(A)) return 0.0;
        // Equations reach the destination over rate-C pipes.
        return std::clamp(std::min(b1->rate_bits, b2->rate_bits), 0.0, C);
    };
    r.comp = combine(search::best_equation(h1, snr), search::best_equation(h2, snr));
    r.comp_nz = combine(search::best_nonzero_equation(h1, snr, {1}),
                        search::best_nonzero_equation(h2, snr, {2}));

    double ri1 = log2p1(std::norm(H[0][0]) * s / (1.0 + std::norm(H[0][1]) * s));
    double ri2 = log2p1(std::norm(H[1][1]) * s / (1.0 + std::norm(H[1][0]) * s));
    auto r_decode = [&](int m) {
        double n1 = std::norm(H[m][0]), n2 = std::norm(H[m][1]);
        return std::min({log2p1(n1 * s), log2p1(n2 * s), 0.5 * log2p1((n1 + n2) * s)});
    };
    double rd1 = r_decode(0), rd2 = r_decode(1);
    double best_df = std::max({std::min(ri1, ri2), std::min(ri1, rd2), std::min(rd1, ri2),
                               std::min(rd1, rd2)});
    r.df = std::min(best_df, C);

    // Quantization at each relay turns the network into an equivalent MIMO
    // channel whose gains already absorb the transmit power, so the
    // equivalent channel is evaluated at unit power.
    double pipe = std::pow(2.0, C);
    Matrix2 hcf;
    for (int m = 0; m < 2; ++m) {
        double hm2 = std::norm(H[m][0]) + std::norm(H[m][1]);
        double snr_cf = s * (pipe - 1.0) / (pipe + s * hm2);
        for (int l = 0; l < 2; ++l) hcf[m][l] = std::sqrt(snr_cf) * H[m][l];
    }
    r.cf = std::clamp(r_mimo(hcf, 1.0), 0.0, C);

    r.upper = std::clamp(r_mimo(H, s), 0.0, C);
    return r;
}

TwoWayRates twoway_strategy_rates(Complex h11, Complex h12, Complex h3, Complex h4, Snr snr,
                                  Snr snr_bc) {
    double s = snr.linear, sb = snr_bc.linear;
    double n11 = std::norm(h11), n12 = std::norm(h12);
    double n3 = std::norm(h3), n4 = std::norm(h4);

    double r_bc = log2p1(std::min(n3, n4) * sb);

    double r_nz = 0.0;
    if (auto best = search::best_nonzero_equation(ChannelVector({h11, h12}), snr, {1, 2}))
        r_nz = std::max(0.0, best->rate_bits);
    double rc1 = std::min(log2p1(n11 * s / (1.0 + n12 * s)), log2p1(n12 * s));
    double rc2 = std::min(log2p1(n12 * s / (1.0 + n11 * s)), log2p1(n11 * s));

    TwoWayRates r;
    double r_decode =
        std::min({log2p1(n11 * s), log2p1(n12 * s), 0.5 * log2p1((n11 + n12) * s)});
    // Recovering both messages individually is itself a way to obtain an
    // equation with nonzero coefficients, so the equation strategy can never
    // fall below the full-decoding symmetric rate.
    r.comp = std::max(0.0, std::min(r_bc, std::max({r_nz, rc1, rc2, r_decode})));
    r.df = std::max(0.0, std::min(r_bc, r_decode));

    double denom = 1.0 + (n11 + n12) * s;
    r.af = std::max(0.0, std::min(log2p1(n12 * n3 * s * sb / (denom + n3 * sb)),
                                  log2p1(n11 * n4 * s * sb / (denom + n4 * sb))));

    r.upper = std::max(0.0, std::min({r_bc, log2p1(n11 * s), log2p1(n12 * s)}));
    return r;
}

double outage_rate(std::vector<double> samples, double rho) {
    if (samples.empty()) throw std::invalid_argument("need at least one sample");
    check_rho(rho);
    std::sort(samples.begin(), samples.end());
    auto idx = static_cast<std::size_t>(std::floor(rho * static_cast<double>(samples.size())));
    if (idx >= samples.size()) idx = samples.size() - 1;
    return samples[idx];
}

MimoCurve sweep_mimo(const MimoConfig& cfg, const std::vector<double>& snr_db_grid) {
    check_rho(cfg.rho);
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
    auto channels = draw_channels(cfg.seed, cfg.trials);
    MimoCurve curve;
    curve.snr_db = snr_db_grid;
    curve.rates.resize(snr_db_grid.size());
    std::vector<MimoRates> per_trial(cfg.trials);
    for (std::size_t g = 0; g < snr_db_grid.size(); ++g) {
        Snr snr = Snr::from_db(snr_db_grid[g]);
        parallel_trials(cfg.trials, [&](std::uint64_t t) {
            per_trial[t] = mimo_strategy_rates(channels[t], snr, cfg.c);
        });
        std::vector<double> col(cfg.trials);
        auto quantile = [&](auto field) {
            for (std::uint64_t t = 0; t < cfg.trials; ++t) col[t] = per_trial[t].*field;
            return outage_rate(col, cfg.rho);
        };
        curve.rates[g] = {quantile(&MimoRates::comp), quantile(&MimoRates::comp_nz),
                          quantile(&MimoRates::df), quantile(&MimoRates::cf),
                          quantile(&MimoRates::upper)};
    }
    return curve;
}

TwoWayCurve sweep_twoway(const TwoWayConfig& cfg, const std::vector<double>& snr_db_grid) {
    check_rho(cfg.rho);
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
    if (!(cfg.bc_factor > 0.0)) throw std::invalid_argument("bc_factor must be positive");
    auto channels = draw_channels(cfg.seed, cfg.trials);
    TwoWayCurve curve;
    curve.snr_db = snr_db_grid;
    curve.rates.resize(snr_db_grid.size());
    std::vector<TwoWayRates> per_trial(cfg.trials);
    for (std::size_t g = 0; g < snr_db_grid.size(); ++g) {
        Snr snr = Snr::from_db(snr_db_grid[g]);
        Snr snr_bc = Snr::from_linear(cfg.bc_factor * snr.linear);
        parallel_trials(cfg.trials, [&](std::uint64_t t) {
            const Matrix2& H = channels[t];
            per_trial[t] =
                twoway_strategy_rates(H[0][0], H[0][1], H[1][0], H[1][1], snr, snr_bc);
        });
        std::vector<double> col(cfg.trials);
        auto quantile = [&](auto field) {
            for (std::uint64_t t = 0; t < cfg.trials; ++t) col[t] = per_trial[t].*field;
            return outage_rate(col, cfg.rho);
        };
        curve.rates[g] = {quantile(&TwoWayRates::comp), quantile(&TwoWayRates::df),
                          quantile(&TwoWayRates::af), quantile(&TwoWayRates::upper)};
    }
    return curve;
}

double rank_failure_probability(Snr snr, std::uint64_t trials, std::uint64_t seed,
                                bool constrained) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    auto channels = draw_channels(seed, trials);
    std::vector<unsigned char> failed(trials, 0);
    parallel_trials(trials, [&](std::uint64_t t) {
        const Matrix2& H = channels[t];
        std::optional<search::BestEquation> b[2];
        for (int m = 0; m < 2; ++m) {
            ChannelVector hm({H[m][0], H[m][1]});
            b[m] = constrained
                       ? search::best_nonzero_equation(hm, snr,
                                                       {static_cast<std::size_t>(m + 1)})
                       : search::best_equation(hm, snr);
        }
        if (!b[0] || !b[1]) {
            failed[t] = 1;
            return;
        }
        ff::GaussianIntMatrix A{2, 2, {b[0]->a[0], b[0]->a[1], b[1]->a[0], b[1]->a[1]}};
        failed[t] = ff::complex_full_rank(A) ? 0 : 1;
    });
    std::uint64_t count = 0;
    for (auto f : failed) count += f;
    return static_cast<double>(count) / static_cast<double>(trials);
}

namespace {

template <typename Curve, typename Row>
std::string curve_csv(const Curve& curve, const char* header, Row&& row) {
    std::string out = header;
    out += '\n';
    for (std::size_t g = 0; g < curve.snr_db.size(); ++g) {
        out += parse::format_double(curve.snr_db[g]);
        for (double v : row(curve.rates[g])) out += "," + parse::format_double(v);
        out += '\n';
    }
    return out;
}

} // namespace

std::string mimo_curve_csv(const MimoCurve& curve) {
    return curve_csv(curve, "snr_db,comp,comp_nz,df,cf,upper", [](const MimoRates& r) {
        return std::array<double, 5>{r.comp, r.comp_nz, r.df, r.cf, r.upper};
    });
}

std::string twoway_curve_csv(const TwoWayCurve& curve) {
    return curve_csv(curve, "snr_db,comp,df,af,upper", [](const TwoWayRates& r) {
        return std::array<double, 4>{r.comp, r.df, r.af, r.upper};
    });
}

std::string mimo_config_json(const MimoConfig& cfg) {
    return nlohmann::json{{"c", cfg.c}, {"rho", cfg.rho}, {"trials", cfg.trials},
                          {"seed", cfg.seed}}
        .dump();
}

MimoConfig mimo_config_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return {j.at("c").get<double>(), j.at("rho").get<double>(),
            j.at("trials").get<std::uint64_t>(), j.at("seed").get<std::uint64_t>()};
}

std::string twoway_config_json(const TwoWayConfig& cfg) {
    return nlohmann::json{{"bc_factor", cfg.bc_factor}, {"rho", cfg.rho},
                          {"trials", cfg.trials}, {"seed", cfg.seed}}
        .dump();
}

TwoWayConfig twoway_config_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return {j.at("bc_factor").get<double>(), j.at("rho").get<double>(),
            j.at("trials").get<std::uint64_t>(), j.at("seed").get<std::uint64_t>()};
}

} // namespace cnf::outage
