#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace cnf::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-derived random stream. The state is a hash of (seed, stream ids),
// so streams for different (trial, purpose) pairs are independent and a
// stream's output never depends on how many other streams were consumed.
class Stream {
public:
    explicit Stream(std::uint64_t seed, std::uint64_t id0 = 0, std::uint64_t id1 = 0,
                    std::uint64_t id2 = 0) {
        std::uint64_t s = seed;
        splitmix64(s);
        s ^= id0 * 0xd1342543de82ef95ULL;
        splitmix64(s);
        s ^= id1 * 0xaf251af3b0f025b5ULL;
        splitmix64(s);
        s ^= id2 * 0x9e6c63d0676a9a99ULL;
        splitmix64(s);
        state_ = s;
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform on [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1].
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Standard normal pair via Box-Muller (no libc distribution so that
    // output depends only on the stream, not the standard library).
    std::pair<double, double> next_gaussian_pair() {
        double u1 = next_unit_open();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto [a, b] = next_gaussian_pair();
        spare_ = b;
        have_spare_ = true;
        return a;
    }

    // Circularly symmetric complex normal with unit variance (CN(0,1)).
    std::complex<double> next_cgaussian() {
        auto [a, b] = next_gaussian_pair();
        return {a * std::numbers::sqrt2 / 2.0, b * std::numbers::sqrt2 / 2.0};
    }

private:
    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace cnf::rng
