#include "cnf/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cnf::rates {

namespace {

void check_lengths(const ChannelVector& h, const CoeffVector& a) {
    if (h.size() != a.size())
        throw std::invalid_argument("channel and coefficient vectors must have equal length");
}

// Conjugated inner product sum(conj(h_l) * a_l).
Complex inner(const std::vector<Complex>& h, const std::vector<Complex>& a) {
    Complex s{};
    for (std::size_t i = 0; i < h.size(); ++i) s += std::conj(h[i]) * a[i];
    return s;
}

std::vector<Complex> to_complex(const CoeffVector& a) {
    std::vector<Complex> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i].to_complex();
    return v;
}

double quad_form(const std::vector<Complex>& h, const std::vector<Complex>& target,
                 Complex alpha, double snr) {
    double mismatch = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) mismatch += std::norm(alpha * h[i] - target[i]);
    return std::norm(alpha) + snr * mismatch;
}

} // namespace

double comp_rate_fixed_alpha(const ChannelVector& h, const CoeffVector& a, Complex alpha,
                             Snr snr) {
    check_lengths(h, a);
    double denom = quad_form(h.entries(), to_complex(a), alpha, snr.linear);
    if (denom <= 0.0)
        throw std::domain_error("rate undefined: zero effective noise (alpha = 0, a = 0)");
    return std::log2(snr.linear / denom);
}

Complex mmse_alpha(const ChannelVector& h, const CoeffVector& a, Snr snr) {
    check_lengths(h, a);
    Complex ha = inner(h.entries(), to_complex(a));
    return snr.linear * ha / (1.0 + snr.linear * h.norm2());
}

ComputationResult comp_rate(const ChannelVector& h, const CoeffVector& a, Snr snr) {
    check_lengths(h, a);
    if (is_zero(a)) throw std::domain_error("coefficient vector must be nonzero");
    double s = snr.linear;
    Complex ha = inner(h.entries(), to_complex(a));
    double inv = static_cast<double>(norm2(a)) - s * std::norm(ha) / (1.0 + s * h.norm2());
    ComputationResult r;
    r.alpha = s * ha / (1.0 + s * h.norm2());
    r.denom = s * inv; // |alpha|^2 + SNR*||alpha*h - a||^2 at the MMSE alpha
    r.rate_bits = -std::log2(inv);
    return r;
}

ComputationResult comp_rate_real(const std::vector<double>& h,
                                 const std::vector<std::int64_t>& a, Snr snr) {
    if (h.size() != a.size())
        throw std::invalid_argument("channel and coefficient vectors must have equal length");
    double s = snr.linear;
    double ha = 0.0, hh = 0.0;
    std::int64_t aa = 0;
    bool zero = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
        ha += h[i] * static_cast<double>(a[i]);
        hh += h[i] * h[i];
        aa += a[i] * a[i];
        if (a[i] != 0) zero = false;
    }
    if (zero) throw std::domain_error("coefficient vector must be nonzero");
    double inv = static_cast<double>(aa) - s * ha * ha / (1.0 + s * hh);
    ComputationResult r;
    r.alpha = Complex(s * ha / (1.0 + s * hh), 0.0);
    r.denom = s * inv;
    r.rate_bits = -0.5 * std::log2(inv);
    return r;
}

double mac_symmetric_rate(const ChannelVector& h, Snr snr) {
    return 0.5 * std::log2(1.0 + snr.linear * h.norm2());
}

double interference_as_noise_rate(const ChannelVector& h, std::size_t m, Snr snr) {
    if (m < 1 || m > h.size()) throw std::invalid_argument("transmitter index out of range");
    double s = snr.linear;
    double interference = h.norm2() - std::norm(h[m - 1]);
    return std::log2(1.0 + s * std::norm(h[m - 1]) / (1.0 + s * interference));
}

double genie_upper_bound(const std::vector<ChannelVector>& h_list,
                         const std::vector<CoeffVector>& a_list, std::size_t ell, Snr snr) {
    if (h_list.size() != a_list.size())
        throw std::invalid_argument("relay channel/coefficient lists must have equal length");
    double best = std::numeric_limits<double>::infinity();
    bool used = false;
    for (std::size_t m = 0; m < h_list.size(); ++m) {
        check_lengths(h_list[m], a_list[m]);
        if (ell < 1 || ell > h_list[m].size())
            throw std::invalid_argument("message index out of range");
        if (a_list[m][ell - 1].is_zero()) continue;
        used = true;
        best = std::min(best, std::log2(1.0 + std::norm(h_list[m][ell - 1]) * snr.linear));
    }
    if (!used) throw std::domain_error("no relay decodes an equation involving this message");
    return best;
}

namespace {

// MMSE-scaled decoding rate for an arbitrary complex target vector t:
// max over beta of log2(SNR / (|beta|^2 * noise_scale + SNR*||beta*h - t||^2)).
// noise_scale > 1 models extra undecoded signal treated as noise.
struct TargetRate {
    double rate;
    Complex beta;
};

TargetRate target_rate(const std::vector<Complex>& h, const std::vector<Complex>& t,
                       double snr, double noise_scale) {
    double hh = 0.0, tt = 0.0;
    Complex ht{};
    for (std::size_t i = 0; i < h.size(); ++i) {
        hh += std::norm(h[i]);
        tt += std::norm(t[i]);
        ht += std::conj(h[i]) * t[i];
    }
    Complex beta = snr * ht / (noise_scale + snr * hh);
    double denom = std::norm(beta) * noise_scale;
    for (std::size_t i = 0; i < h.size(); ++i) denom += snr * std::norm(beta * h[i] - t[i]);
    if (denom <= 0.0) return {std::numeric_limits<double>::infinity(), beta};
    return {std::log2(snr / denom), beta};
}

// Index of the single unit entry when a is exactly a standard unit vector,
// otherwise npos.
std::size_t unit_index(const CoeffVector& a) {
    std::size_t idx = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        if (idx != static_cast<std::size_t>(-1)) return static_cast<std::size_t>(-1);
        if (!(a[i] == GaussInt{1, 0})) return static_cast<std::size_t>(-1);
        idx = i;
    }
    return idx;
}

} // namespace

ScSecondResult sc_second_rate(const ChannelVector& h, const CoeffVector& a,
                              const CoeffVector& b, Snr snr) {
    check_lengths(h, a);
    check_lengths(h, b);
    if (is_zero(b)) throw std::domain_error("second coefficient vector must be nonzero");
    double s = snr.linear;
    const auto& he = h.entries();
    auto bc = to_complex(b);

    std::size_t i = unit_index(a);
    if (i != static_cast<std::size_t>(-1)) {
        // The message carried on entry i is known exactly; drop that column.
        std::vector<Complex> hr, br;
        for (std::size_t l = 0; l < he.size(); ++l) {
            if (l == i) continue;
            hr.push_back(he[l]);
            br.push_back(bc[l]);
        }
        TargetRate tr = hr.empty() ? TargetRate{std::numeric_limits<double>::infinity(), {}}
                                   : target_rate(hr, br, s, 1.0);
        return {tr.rate, tr.beta, GaussInt{0, 0}};
    }

    auto ac = to_complex(a);
    double bound = 1.0 + s * h.norm2();
    std::int64_t box = static_cast<std::int64_t>(std::floor(std::sqrt(bound)));
    ScSecondResult best;
    best.rate = -std::numeric_limits<double>::infinity();
    std::vector<Complex> t(he.size());
    for (std::int64_t tr_re = -box; tr_re <= box; ++tr_re) {
        for (std::int64_t tr_im = -box; tr_im <= box; ++tr_im) {
            if (static_cast<double>(tr_re * tr_re + tr_im * tr_im) > bound) continue;
            Complex tau(static_cast<double>(tr_re), static_cast<double>(tr_im));
            for (std::size_t l = 0; l < he.size(); ++l) t[l] = tau * ac[l] + bc[l];
            TargetRate cand = target_rate(he, t, s, 1.0);
            if (cand.rate > best.rate) {
                best.rate = cand.rate;
                best.beta = cand.beta;
                best.tau = GaussInt{tr_re, tr_im};
            }
        }
    }
    return best;
}

SuperpositionConfig::SuperpositionConfig(std::vector<Complex> ga, std::vector<Complex> gb)
    : gamma_a(std::move(ga)), gamma_b(std::move(gb)) {
    if (gamma_a.size() != gamma_b.size() || gamma_a.empty())
        throw std::invalid_argument("scaling coefficient sequences must have equal nonzero length");
    for (std::size_t i = 0; i < gamma_a.size(); ++i) {
        double p = std::norm(gamma_a[i]) + std::norm(gamma_b[i]);
        if (std::abs(p - 1.0) > 1e-12)
            throw std::invalid_argument("per-transmitter power split must satisfy "
                                        "|gamma_A|^2 + |gamma_B|^2 = 1");
    }
}

std::pair<double, double> superposition_rates(const ChannelVector& h,
                                              const SuperpositionConfig& cfg,
                                              const CoeffVector& a, const CoeffVector& b,
                                              Snr snr) {
    if (cfg.size() != h.size())
        throw std::invalid_argument("power split length must match channel length");
    check_lengths(h, a);
    check_lengths(h, b);
    double s = snr.linear;
    const auto& he = h.entries();
    std::vector<Complex> ha(he.size()), hb(he.size());
    double hb2 = 0.0;
    for (std::size_t l = 0; l < he.size(); ++l) {
        ha[l] = cfg.gamma_a[l] * he[l];
        hb[l] = cfg.gamma_b[l] * he[l];
        hb2 += std::norm(hb[l]);
    }

    // Level A: decode the equation a against h_A with level B treated as noise.
    double ra = target_rate(ha, to_complex(a), s, 1.0 + s * hb2).rate;

    // Level B: level-A codewords are already decoded, so only their integer
    // combination tau*a remains unknown up to a residual.
    double rb;
    auto bc = to_complex(b);
    std::size_t i = unit_index(a);
    if (i != static_cast<std::size_t>(-1)) {
        // Message i's level-A signal is known; only the other level-A signals
        // stay as noise.
        double residual_a = 0.0;
        for (std::size_t l = 0; l < he.size(); ++l)
            if (l != i) residual_a += std::norm(ha[l]);
        rb = target_rate(hb, bc, s, 1.0 + s * residual_a).rate;
    } else {
        auto ac = to_complex(a);
        double bound = 1.0 + s * h.norm2();
        std::int64_t box = static_cast<std::int64_t>(std::floor(std::sqrt(bound)));
        rb = -std::numeric_limits<double>::infinity();
        for (std::int64_t tr_re = -box; tr_re <= box; ++tr_re) {
            for (std::int64_t tr_im = -box; tr_im <= box; ++tr_im) {
                if (static_cast<double>(tr_re * tr_re + tr_im * tr_im) > bound) continue;
                Complex tau(static_cast<double>(tr_re), static_cast<double>(tr_im));
                // Joint target: beta*h must approximate tau*a on level A plus
                // b on level B simultaneously.
                double hh = h.norm2(), tt = 0.0;
                Complex ht{};
                for (std::size_t l = 0; l < he.size(); ++l) {
                    Complex tA = tau * ac[l];
                    ht += std::conj(ha[l]) * tA + std::conj(hb[l]) * bc[l];
                    tt += std::norm(tA) + std::norm(bc[l]);
                }
                Complex beta = s * ht / (1.0 + s * hh);
                double denom = std::norm(beta);
                for (std::size_t l = 0; l < he.size(); ++l)
                    denom += s * (std::norm(beta * ha[l] - tau * ac[l]) +
                                  std::norm(beta * hb[l] - bc[l]));
                if (denom > 0.0) rb = std::max(rb, std::log2(s / denom));
            }
        }
    }
    return {std::max(0.0, ra), std::max(0.0, rb)};
}

double equivalent_noise_variance(const ChannelVector& h, const CoeffVector& a, Complex alpha,
                                 Snr snr) {
    check_lengths(h, a);
    double mismatch = 0.0;
    auto ac = to_complex(a);
    for (std::size_t i = 0; i < h.size(); ++i)
        mismatch += std::norm(alpha * h.entries()[i] - ac[i]);
    return 0.5 * std::norm(alpha) + 0.5 * snr.linear * mismatch;
}

HadamardNetworkRates hadamard_network_rates(int m, Snr snr) {
    if (m < 1) throw std::invalid_argument("network size must be at least 1");
    double s = snr.linear;
    double md = static_cast<double>(m);
    HadamardNetworkRates r;
    r.comp = std::log2(1.0 / md + s);
    r.df = std::log2(1.0 + md * s) / md;
    r.af_cf = std::log2(1.0 + s * (s / (md * s + 1.0)));
    r.upper = std::log2(1.0 + s);
    return r;
}

} // namespace cnf::rates
