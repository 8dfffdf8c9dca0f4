#include "cnf/lattice_codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "cnf/errors.hpp"
#include "cnf/parse.hpp"
#include "cnf/rates.hpp"
#include "cnf/rng.hpp"

namespace cnf::lattice {

namespace {

// Stream id0 tags so every random purpose gets an independent stream.
constexpr std::uint64_t kTagGenerator = 1;
constexpr std::uint64_t kTagDither = 2;
constexpr std::uint64_t kTagMessage = 3;
constexpr std::uint64_t kTagNoise = 4;
constexpr std::uint64_t kTagTrialDither = 5;

std::uint64_t pow_check(std::int64_t p, std::size_t k) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (v > kCodebookBudget / static_cast<std::uint64_t>(p))
            throw ResourceError("codebook size p^k exceeds the quantizer budget");
        v *= static_cast<std::uint64_t>(p);
    }
    return v;
}

ff::FieldMatrix level_generator(const NestedLatticeCode& code, std::size_t ell) {
    if (ell < 1 || ell > code.levels()) throw std::invalid_argument("level index out of range");
    std::size_t k = code.k_list[ell - 1];
    ff::FieldMatrix g(code.n, k, code.p);
    for (std::size_t i = 0; i < code.n; ++i)
        for (std::size_t j = 0; j < k; ++j) g.set(i, j, code.G.at(i, j));
    return g;
}

std::vector<std::int64_t> apply_generator(const NestedLatticeCode& code, std::size_t ell,
                                          const std::vector<std::int64_t>& w) {
    std::size_t k = code.k_list[ell - 1];
    if (w.size() != k) throw std::invalid_argument("message length does not match the level");
    for (auto v : w)
        if (v < 0 || v >= code.p) throw std::invalid_argument("message symbol out of range");
    std::vector<std::int64_t> t(code.n, 0);
    for (std::size_t i = 0; i < code.n; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < k; ++j) s = (s + code.G.at(i, j) * w[j]) % code.p;
        t[i] = s;
    }
    return t;
}

void validate_code(const NestedLatticeCode& code) {
    if (!ff::is_prime(code.p)) throw std::invalid_argument("p must be prime");
    if (code.k_list.empty()) throw std::invalid_argument("need at least one level");
    for (std::size_t i = 0; i < code.k_list.size(); ++i) {
        if (code.k_list[i] < 1) throw std::invalid_argument("message lengths must be positive");
        if (i > 0 && code.k_list[i] < code.k_list[i - 1])
            throw std::invalid_argument("message lengths must be nondecreasing");
    }
    if (code.k_max() > code.n)
        throw std::invalid_argument("message length cannot exceed the dimension");
    if (!(code.gamma > 0.0)) throw std::invalid_argument("coarse scaling must be positive");
    pow_check(code.p, code.k_max());
}

} // namespace

NestedLatticeCode build_code(std::int64_t p, const std::vector<std::size_t>& k_list,
                             std::size_t n, std::uint64_t seed, Snr snr) {
    if (!(snr.linear > 0.0)) throw std::invalid_argument("code construction requires SNR > 0");
    NestedLatticeCode code{p, n, k_list, std::sqrt(6.0 * snr.linear), snr, seed,
                           ff::FieldMatrix(std::max<std::size_t>(n, 1),
                                           k_list.empty() ? 1 : k_list.back(), 2)};
    code.G = ff::FieldMatrix(n, k_list.empty() ? 1 : k_list.back(), p);
    validate_code(code);

    for (std::uint64_t attempt = 0; attempt < 10'000; ++attempt) {
        rng::Stream gen(seed, kTagGenerator, attempt);
        ff::FieldMatrix g(n, code.k_max(), p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < code.k_max(); ++j)
                g.set(i, j, static_cast<std::int64_t>(gen.next_below(static_cast<std::uint64_t>(p))));
        code.G = g;
        bool ok = true;
        for (std::size_t ell = 1; ell <= code.levels() && ok; ++ell) {
            std::size_t k = code.k_list[ell - 1];
            ok = ff::rank(level_generator(code, ell)) == k;
        }
        if (ok) return code;
    }
    throw ResourceError("failed to sample a full-rank generator matrix");
}

Dithers make_dithers(const NestedLatticeCode& code, std::size_t num_transmitters,
                     std::uint64_t seed) {
    Dithers d;
    d.dr.resize(num_transmitters);
    d.di.resize(num_transmitters);
    for (std::size_t l = 0; l < num_transmitters; ++l) {
        rng::Stream sr(seed, kTagDither, l + 1, 0);
        rng::Stream si(seed, kTagDither, l + 1, 1);
        d.dr[l].resize(code.n);
        d.di[l].resize(code.n);
        for (std::size_t j = 0; j < code.n; ++j) {
            d.dr[l][j] = (sr.next_unit() - 0.5) * code.gamma;
            d.di[l][j] = (si.next_unit() - 0.5) * code.gamma;
        }
    }
    return d;
}

std::vector<double> mod_coarse(const NestedLatticeCode& code, const std::vector<double>& x) {
    if (x.size() != code.n) throw std::invalid_argument("vector length must equal the dimension");
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = x[j] - code.gamma * std::floor(x[j] / code.gamma + 0.5);
    return out;
}

std::vector<double> encode_phi(const NestedLatticeCode& code, std::size_t ell,
                               const std::vector<std::int64_t>& w) {
    auto t = apply_generator(code, ell, w);
    std::vector<double> x(code.n);
    for (std::size_t j = 0; j < code.n; ++j)
        x[j] = code.gamma * static_cast<double>(t[j]) / static_cast<double>(code.p);
    return mod_coarse(code, x);
}

std::vector<std::int64_t> decode_phi_inv(const NestedLatticeCode& code, std::size_t m_level,
                                         const std::vector<double>& v) {
    if (v.size() != code.n) throw std::invalid_argument("vector length must equal the dimension");
    std::size_t k = code.k_list.at(m_level - 1);
    double pd = static_cast<double>(code.p);
    std::vector<std::int64_t> r(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
        double scaled = pd * v[j] / code.gamma;
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) > 1e-6 * pd)
            throw CorruptionError("input is not a point of the scaled integer grid");
        r[j] = ff::g_inv(static_cast<std::int64_t>(std::llround(rounded)), code.p);
    }
    // Solve G_m w = r over F_p by eliminating [G_m | r]; the generator has
    // full column rank, so a consistent system has a unique solution with a
    // pivot in every message column.
    std::size_t rows = code.n, cols = k + 1;
    std::vector<std::int64_t> e(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) e[i * cols + j] = code.G.at(i, j);
        e[i * cols + k] = r[i];
    }
    auto pivots = ff::row_reduce(e, rows, cols, code.p);
    if (!pivots.empty() && pivots.back() == k)
        throw CorruptionError("input is not a codeword point of this level");
    std::vector<std::int64_t> w(k, 0);
    for (std::size_t row = 0; row < pivots.size(); ++row) w[pivots[row]] = e[row * cols + k];
    return w;
}

LatticeEquation quantize_fine(const NestedLatticeCode& code, std::size_t m_level,
                              const std::vector<double>& x) {
    if (x.size() != code.n) throw std::invalid_argument("vector length must equal the dimension");
    std::size_t k = code.k_list.at(m_level - 1);
    std::uint64_t count = pow_check(code.p, k);
    std::vector<std::int64_t> w(k, 0);
    std::vector<double> best_point(code.n, 0.0);
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        auto t = apply_generator(code, m_level, w);
        double dist = 0.0;
        std::vector<double> y(code.n);
        for (std::size_t j = 0; j < code.n; ++j) {
            double base = code.gamma * static_cast<double>(t[j]) / static_cast<double>(code.p);
            double shift = std::floor((x[j] - base) / code.gamma + 0.5);
            y[j] = base + code.gamma * shift;
            dist += (x[j] - y[j]) * (x[j] - y[j]);
        }
        if (dist < best_dist) {
            best_dist = dist;
            best_point = std::move(y);
        }
        // Advance the message odometer, last symbol fastest, so codeword
        // indices are visited in ascending lexicographic order.
        for (std::size_t d = k; d-- > 0;) {
            if (++w[d] < code.p) break;
            w[d] = 0;
        }
    }
    return {mod_coarse(code, best_point), m_level};
}

std::vector<std::vector<Complex>> transmit(const NestedLatticeCode& code, const Dithers& d,
                                           const std::vector<std::vector<std::int64_t>>& wr,
                                           const std::vector<std::vector<std::int64_t>>& wi) {
    std::size_t L = wr.size();
    if (wi.size() != L || d.dr.size() != L)
        throw std::invalid_argument("transmitter counts must match");
    std::vector<std::vector<Complex>> x(L, std::vector<Complex>(code.n));
    for (std::size_t l = 0; l < L; ++l) {
        auto tr = encode_phi(code, l + 1, wr[l]);
        auto ti = encode_phi(code, l + 1, wi[l]);
        for (std::size_t j = 0; j < code.n; ++j) {
            tr[j] -= d.dr[l][j];
            ti[j] -= d.di[l][j];
        }
        auto xr = mod_coarse(code, tr);
        auto xi = mod_coarse(code, ti);
        for (std::size_t j = 0; j < code.n; ++j) x[l][j] = Complex(xr[j], xi[j]);
    }
    return x;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>
relay_decode(const NestedLatticeCode& code, const Dithers& d, const std::vector<Complex>& y,
             const ChannelVector& h, const CoeffVector& a, Complex alpha) {
    if (y.size() != code.n) throw std::invalid_argument("observation length must equal n");
    if (h.size() != a.size() || h.size() != d.dr.size())
        throw std::invalid_argument("transmitter counts must match");
    std::size_t level = 0;
    for (std::size_t l = 0; l < a.size(); ++l)
        if (!a[l].is_zero()) level = l + 1;
    if (level == 0) throw std::invalid_argument("coefficient vector must be nonzero");

    std::vector<double> sr(code.n), si(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
        Complex ay = alpha * y[j];
        double vr = ay.real(), vi = ay.imag();
        for (std::size_t l = 0; l < a.size(); ++l) {
            double ar = static_cast<double>(a[l].re), ai = static_cast<double>(a[l].im);
            vr += ar * d.dr[l][j] - ai * d.di[l][j];
            vi += ai * d.dr[l][j] + ar * d.di[l][j];
        }
        sr[j] = vr;
        si[j] = vi;
    }
    auto vr = quantize_fine(code, level, sr);
    auto vi = quantize_fine(code, level, si);
    return {decode_phi_inv(code, level, vr.v), decode_phi_inv(code, level, vi.v)};
}

SimResult simulate_equation_error_detail(const NestedLatticeCode& code, const ChannelVector& h,
                                         const CoeffVector& a, std::uint64_t trials,
                                         std::uint64_t seed, bool noiseless,
                                         std::optional<Complex> alpha_override) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    std::size_t L = h.size();
    if (a.size() != L || code.levels() != L)
        throw std::invalid_argument("transmitter count must match the code's level count");

    std::size_t level = 0;
    for (std::size_t l = 0; l < L; ++l)
        if (!a[l].is_zero()) level = l + 1;
    if (level == 0) throw std::invalid_argument("coefficient vector must be nonzero");
    std::size_t km = code.k_list[level - 1];

    Complex alpha;
    if (alpha_override)
        alpha = *alpha_override;
    else if (noiseless)
        alpha = 1.0;
    else
        alpha = rates::mmse_alpha(h, a, code.snr);

    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t dither_seed = rng::Stream(seed, kTagTrialDither, t).next_u64();
        Dithers d = make_dithers(code, L, dither_seed);

        rng::Stream msg(seed, kTagMessage, t);
        std::vector<std::vector<std::int64_t>> wr(L), wi(L);
        for (std::size_t l = 0; l < L; ++l) {
            wr[l].resize(code.k_list[l]);
            wi[l].resize(code.k_list[l]);
            for (auto& v : wr[l])
                v = static_cast<std::int64_t>(msg.next_below(static_cast<std::uint64_t>(code.p)));
            for (auto& v : wi[l])
                v = static_cast<std::int64_t>(msg.next_below(static_cast<std::uint64_t>(code.p)));
        }

        auto x = transmit(code, d, wr, wi);
        std::vector<Complex> y(code.n, Complex{});
        for (std::size_t l = 0; l < L; ++l)
            for (std::size_t j = 0; j < code.n; ++j) y[j] += h[l] * x[l][j];
        if (!noiseless) {
            rng::Stream noise(seed, kTagNoise, t);
            for (std::size_t j = 0; j < code.n; ++j) y[j] += noise.next_cgaussian();
        }

        // Expected message equations (messages zero-padded to the level's
        // length): uR = sum qR*wR - qI*wI, uI = sum qI*wR + qR*wI over F_p.
        std::vector<std::int64_t> ur(km, 0), ui(km, 0);
        for (std::size_t l = 0; l < L; ++l) {
            std::int64_t qr = ff::g_inv(a[l].re, code.p);
            std::int64_t qi = ff::g_inv(a[l].im, code.p);
            for (std::size_t i = 0; i < code.k_list[l]; ++i) {
                ur[i] = (ur[i] + qr * wr[l][i] + (code.p - qi) * wi[l][i]) % code.p;
                ui[i] = (ui[i] + qi * wr[l][i] + qr * wi[l][i]) % code.p;
            }
        }

        bool ok = false;
        try {
            auto [dur, dui] = relay_decode(code, d, y, h, a, alpha);
            ok = dur == ur && dui == ui;
        } catch (const CorruptionError&) {
            ok = false;
        }
        if (!ok) ++errors;
    }
    double rate = static_cast<double>(errors) / static_cast<double>(trials);
    return {trials, errors, rate};
}

double simulate_equation_error(const NestedLatticeCode& code, const ChannelVector& h,
                               const CoeffVector& a, std::uint64_t trials, std::uint64_t seed,
                               bool noiseless, std::optional<Complex> alpha_override) {
    return simulate_equation_error_detail(code, h, a, trials, seed, noiseless, alpha_override)
        .error_rate;
}

std::string code_to_json_text(const NestedLatticeCode& code) {
    nlohmann::json g_rows = nlohmann::json::array();
    for (std::size_t i = 0; i < code.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < code.k_max(); ++j) row.push_back(code.G.at(i, j));
        g_rows.push_back(std::move(row));
    }
    nlohmann::json j{{"p", code.p},       {"n", code.n},       {"k_list", code.k_list},
                     {"gamma", code.gamma}, {"seed", code.seed}, {"G", std::move(g_rows)}};
    return j.dump();
}

NestedLatticeCode code_from_json_text(const std::string& text, Snr snr) {
    nlohmann::json j = nlohmann::json::parse(text);
    NestedLatticeCode code{j.at("p").get<std::int64_t>(),
                           j.at("n").get<std::size_t>(),
                           j.at("k_list").get<std::vector<std::size_t>>(),
                           j.at("gamma").get<double>(),
                           snr,
                           j.at("seed").get<std::uint64_t>(),
                           ff::FieldMatrix(1, 1, 2)};
    double expected = std::sqrt(6.0 * snr.linear);
    if (!(code.gamma > 0.0) || std::abs(code.gamma - expected) > 1e-6 * expected)
        throw std::invalid_argument("stored coarse scaling does not match the requested SNR");
    const auto& g_rows = j.at("G");
    std::vector<std::int64_t> entries;
    for (const auto& row : g_rows)
        for (const auto& v : row) entries.push_back(v.get<std::int64_t>());
    code.G = ff::FieldMatrix(code.n, code.k_list.back(), code.p, std::move(entries));
    validate_code(code);
    for (std::size_t ell = 1; ell <= code.levels(); ++ell)
        if (ff::rank(level_generator(code, ell)) != code.k_list[ell - 1])
            throw std::invalid_argument("stored generator is not full rank at every level");
    return code;
}

std::string sim_to_csv(const SimResult& r) {
    return "trial_count,error_count,error_rate\n" + std::to_string(r.trials) + "," +
           std::to_string(r.errors) + "," + parse::format_double(r.error_rate) + "\n";
}

} // namespace cnf::lattice
