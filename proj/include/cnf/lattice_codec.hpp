#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnf/channel.hpp"
#include "cnf/finite_field.hpp"
#include "cnf/gauss_int.hpp"

namespace cnf::lattice {

// Budget on p^k codewords enumerated by the fine-lattice quantizer.
inline constexpr std::uint64_t kCodebookBudget = 2'000'000;

// Nested lattice code: coarse lattice gamma*Z^n, fine lattice of level l is
// gamma*(p^-1*C_l + Z^n) with C_l the span of the first k_l columns of G.
struct NestedLatticeCode {
    std::int64_t p = 2;
    std::size_t n = 1;
    std::vector<std::size_t> k_list; // nondecreasing, one level per transmitter
    double gamma = 0.0;              // sqrt(6*SNR): Voronoi second moment SNR/2
    Snr snr{};
    std::uint64_t seed = 0;
    ff::FieldMatrix G; // n x k_max

    std::size_t levels() const { return k_list.size(); }
    std::size_t k_max() const { return k_list.back(); }
};

NestedLatticeCode build_code(std::int64_t p, const std::vector<std::size_t>& k_list,
                             std::size_t n, std::uint64_t seed, Snr snr);

// Per-transmitter dither pairs, uniform over the coarse cell [-gamma/2, gamma/2)^n.
struct Dithers {
    std::vector<std::vector<double>> dr, di; // L x n
};

Dithers make_dithers(const NestedLatticeCode& code, std::size_t num_transmitters,
                     std::uint64_t seed);

// Componentwise reduction into [-gamma/2, gamma/2)^n.
std::vector<double> mod_coarse(const NestedLatticeCode& code, const std::vector<double>& x);

// Message (length k_ell over F_p) -> fine-lattice point of level ell inside
// the coarse cell. ell is 1-based.
std::vector<double> encode_phi(const NestedLatticeCode& code, std::size_t ell,
                               const std::vector<std::int64_t>& w);

struct LatticeEquation {
    std::vector<double> v; // fine-lattice point, mod_coarse(v) == v
    std::size_t level = 1;
};

// Left inverse of encode_phi, extended to lattice equations; throws
// CorruptionError when v is not a lattice point of the level.
std::vector<std::int64_t> decode_phi_inv(const NestedLatticeCode& code, std::size_t m_level,
                                         const std::vector<double>& v);

// Nearest fine-lattice point of the level, reduced into the coarse cell.
LatticeEquation quantize_fine(const NestedLatticeCode& code, std::size_t m_level,
                              const std::vector<double>& x);

// Dithered channel inputs, one complex row of length n per transmitter.
std::vector<std::vector<Complex>> transmit(const NestedLatticeCode& code, const Dithers& d,
                                           const std::vector<std::vector<std::int64_t>>& wr,
                                           const std::vector<std::vector<std::int64_t>>& wi);

// Remove dithers, quantize onto the finest participating level and map back
// to the pair of message equations over F_p.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>
relay_decode(const NestedLatticeCode& code, const Dithers& d, const std::vector<Complex>& y,
             const ChannelVector& h, const CoeffVector& a, Complex alpha);

struct SimResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double error_rate = 0.0;
};

// Monte-Carlo equation-error probability over dithers, messages and noise.
// noiseless drops the AWGN and fixes alpha = 1; alpha_override forces the
// scaling coefficient (otherwise the MMSE value is used).
SimResult simulate_equation_error_detail(const NestedLatticeCode& code, const ChannelVector& h,
                                         const CoeffVector& a, std::uint64_t trials,
                                         std::uint64_t seed, bool noiseless = false,
                                         std::optional<Complex> alpha_override = {});

double simulate_equation_error(const NestedLatticeCode& code, const ChannelVector& h,
                               const CoeffVector& a, std::uint64_t trials, std::uint64_t seed,
                               bool noiseless = false,
                               std::optional<Complex> alpha_override = {});

// {"p", "n", "k_list", "gamma", "seed", "G": [[...], ...]} (G row-major, n rows)
std::string code_to_json_text(const NestedLatticeCode& code);
NestedLatticeCode code_from_json_text(const std::string& text, Snr snr);

std::string sim_to_csv(const SimResult& r);

} // namespace cnf::lattice
