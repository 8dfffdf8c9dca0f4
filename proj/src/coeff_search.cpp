#include "cnf/coeff_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cnf/errors.hpp"
#include "cnf/rates.hpp"

namespace cnf::search {

namespace {

// True when g is the representative of {g, -g, jg, -jg} under the
// (re, im) pair order used by canonical().
bool dominant(const GaussInt& g) {
    GaussInt best = g;
    GaussInt rot = g;
    for (int k = 0; k < 3; ++k) {
        rot = rot.times_j();
        if (best.re != rot.re ? best.re < rot.re : best.im < rot.im) best = rot;
    }
    return best == g;
}

struct LexCmp {
    bool operator()(const CoeffVector& a, const CoeffVector& b) const { return lex_less(a, b); }
};

void dfs(std::size_t l, std::size_t L, std::int64_t remaining, bool seen_nonzero,
         CoeffVector& cur, std::vector<CoeffVector>& out, std::size_t ceiling) {
    if (l == L) {
        if (!seen_nonzero) return;
        if (out.size() >= ceiling)
            throw ResourceError("candidate enumeration exceeded the configured ceiling");
        out.push_back(cur);
        return;
    }
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(remaining)));
    while (r * r > remaining) --r;
    for (std::int64_t re = -r; re <= r; ++re) {
        for (std::int64_t im = -r; im <= r; ++im) {
            std::int64_t n2 = re * re + im * im;
            if (n2 > remaining) continue;
            GaussInt g{re, im};
            // The first nonzero entry fixes the rotation class representative.
            if (!seen_nonzero && !g.is_zero() && !dominant(g)) continue;
            cur[l] = g;
            dfs(l + 1, L, remaining - n2, seen_nonzero || !g.is_zero(), cur, out, ceiling);
        }
    }
    cur[l] = GaussInt{};
}

// Schnorr-Euchner enumeration of integer points of a positive definite
// quadratic form below a shrinking radius, reporting every accepted point.
class SphereSearch {
public:
    SphereSearch(const ChannelVector& h, Snr snr) : L_(h.size()), n_(2 * h.size()) {
        double c = snr.linear / (1.0 + snr.linear * h.norm2());
        // Real embedding of M = I - c*h*h^H; the form value of the stacked
        // vector [Re a; Im a] equals a^H M a.
        std::vector<double> m(n_ * n_, 0.0);
        for (std::size_t k = 0; k < L_; ++k) {
            for (std::size_t l = 0; l < L_; ++l) {
                Complex v = -c * h[k] * std::conj(h[l]);
                if (k == l) v += 1.0;
                m[k * n_ + l] = v.real();
                m[(k + L_) * n_ + (l + L_)] = v.real();
                m[k * n_ + (l + L_)] = -v.imag();
                m[(k + L_) * n_ + l] = v.imag();
            }
        }
        // Cholesky m = R^T R with R upper triangular.
        r_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i; j < n_; ++j) {
                double s = m[i * n_ + j];
                for (std::size_t k = 0; k < i; ++k) s -= r_[k * n_ + i] * r_[k * n_ + j];
                if (i == j) {
                    if (s <= 0.0) throw std::runtime_error("quadratic form not positive definite");
                    r_[i * n_ + j] = std::sqrt(s);
                } else {
                    r_[i * n_ + j] = s / r_[i * n_ + i];
                }
            }
        }
    }

    // Enumerate all nonzero integer vectors with form value < 1 and report
    // them through `accept`. accept(a, f2) returns true when the candidate
    // is admissible; the radius shrinks only on admissible points, keeping
    // near-ties within a 1e-9 relative slack.
    template <typename Accept>
    void run(Accept&& accept) {
        double bound = 1.0;
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> part(n_ + 1, 0.0), center(n_, 0.0);
        std::vector<std::int64_t> x(n_, 0), step(n_, 1);
        std::size_t nodes = 0;

        std::size_t k = n_ - 1;
        center[k] = 0.0;
        x[k] = 0;
        step[k] = 1;
        part[k + 1] = 0.0;
        for (;;) {
            double d = r_[k * n_ + k] * (static_cast<double>(x[k]) - center[k]);
            double nd = part[k + 1] + d * d;
            if (nd < bound) {
                if (k > 0) {
                    part[k] = nd;
                    --k;
                    double e = 0.0;
                    for (std::size_t j = k + 1; j < n_; ++j)
                        e += r_[k * n_ + j] * static_cast<double>(x[j]);
                    center[k] = -e / r_[k * n_ + k];
                    x[k] = static_cast<std::int64_t>(std::llround(center[k]));
                    step[k] = (center[k] >= static_cast<double>(x[k])) ? 1 : -1;
                    continue;
                }
                if (++nodes > kCandidateCeiling)
                    throw ResourceError("sphere enumeration exceeded the configured ceiling");
                bool nonzero = false;
                for (std::size_t i = 0; i < n_; ++i)
                    if (x[i] != 0) { nonzero = true; break; }
                if (nonzero) {
                    CoeffVector a(L_);
                    for (std::size_t l = 0; l < L_; ++l) a[l] = GaussInt{x[l], x[l + L_]};
                    if (accept(a, nd) && nd < best) {
                        best = nd;
                        bound = std::min(bound, best * (1.0 + 1e-9));
                    }
                }
                x[k] += step[k];
                step[k] = -step[k] - (step[k] > 0 ? 1 : -1);
            } else {
                ++k;
                if (k == n_) return;
                x[k] += step[k];
                step[k] = -step[k] - (step[k] > 0 ? 1 : -1);
            }
        }
    }

private:
    std::size_t L_, n_;
    std::vector<double> r_;
};

std::optional<BestEquation> sphere_best(const ChannelVector& h, Snr snr,
                                        const std::set<std::size_t>& required) {
    for (std::size_t idx : required)
        if (idx < 1 || idx > h.size())
            throw std::invalid_argument("required index out of range");

    SphereSearch sphere(h, snr);
    std::vector<std::pair<CoeffVector, double>> near; // (canonical a, form value)
    double best_f = std::numeric_limits<double>::infinity();
    sphere.run([&](const CoeffVector& a, double f2) {
        for (std::size_t idx : required)
            if (a[idx - 1].is_zero()) return false;
        if (f2 < best_f) best_f = f2;
        near.emplace_back(canonical(a), f2);
        return true;
    });
    if (near.empty()) return std::nullopt;

    // Re-rank the near-best set by the exact closed-form rate.
    double slack = best_f * (1.0 + 1e-9);
    std::optional<BestEquation> best;
    std::set<CoeffVector, LexCmp> seen;
    for (const auto& [a, f2] : near) {
        if (f2 > slack) continue;
        if (!seen.insert(a).second) continue;
        double rate = rates::comp_rate(h, a, snr).rate_bits;
        if (!best || rate > best->rate_bits + 1e-12 ||
            (std::abs(rate - best->rate_bits) <= 1e-12 && lex_less(a, best->a)))
            best = BestEquation{a, rate};
    }
    if (!best || best->rate_bits <= 0.0) return std::nullopt;
    return best;
}

} // namespace

CandidateSet enumerate_candidates(const ChannelVector& h, Snr snr, std::size_t ceiling) {
    double bound = 1.0 + h.norm2() * snr.linear;
    auto norm_max = static_cast<std::int64_t>(std::ceil(bound)) - 1;
    CandidateSet set{h, snr, std::max<std::int64_t>(norm_max, 0), {}};
    if (norm_max >= 1) {
        // Cheap pre-check: every vector in the cube |Re|,|Im| <= m lies inside
        // the norm ball, and each rotation class of nonzero vectors has exactly
        // four members, so ((2m+1)^(2L) - 1) / 4 classes exist at minimum. If
        // that alone exceeds the ceiling, fail before scanning the ball.
        double m = std::floor(std::sqrt(static_cast<double>(norm_max) /
                                        static_cast<double>(2 * h.size())));
        double cube = std::pow(2.0 * m + 1.0, static_cast<double>(2 * h.size()));
        if ((cube - 1.0) / 4.0 > static_cast<double>(ceiling))
            throw ResourceError("candidate enumeration exceeded the configured ceiling");
        CoeffVector cur(h.size());
        dfs(0, h.size(), norm_max, false, cur, set.candidates, ceiling);
    }
    return set;
}

std::optional<BestEquation> best_equation(const ChannelVector& h, Snr snr) {
    return sphere_best(h, snr, {});
}

std::optional<BestEquation> best_nonzero_equation(const ChannelVector& h, Snr snr,
                                                  const std::set<std::size_t>& required) {
    return sphere_best(h, snr, required);
}

RateProfile rate_profile(const ChannelVector& h, Snr snr, std::size_t top_k) {
    if (top_k < 1) throw std::invalid_argument("top_k must be at least 1");
    CandidateSet set = enumerate_candidates(h, snr);
    RateProfile profile;
    profile.rows.reserve(set.candidates.size());
    for (const auto& a : set.candidates)
        profile.rows.emplace_back(a, rates::comp_rate(h, a, snr).rate_bits);
    std::sort(profile.rows.begin(), profile.rows.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return lex_less(x.first, y.first);
    });
    if (profile.rows.size() > top_k) profile.rows.resize(top_k);
    return profile;
}

} // namespace cnf::search
