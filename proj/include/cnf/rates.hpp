#pragma once

#include <utility>
#include <vector>

#include "cnf/channel.hpp"
#include "cnf/gauss_int.hpp"

namespace cnf::rates {

// Result of maximizing the computation rate over the receiver scaling.
struct ComputationResult {
    double rate_bits = 0.0; // bits per complex channel use; may be negative
    Complex alpha{};        // scaling that attains the rate
    double denom = 0.0;     // minimized quadratic form |alpha|^2 + SNR*||alpha*h - a||^2
};

// Rate of decoding the equation with coefficients a at a fixed receiver
// scaling: log2(SNR / (|alpha|^2 + SNR*||alpha*h - a||^2)).
double comp_rate_fixed_alpha(const ChannelVector& h, const CoeffVector& a, Complex alpha,
                             Snr snr);

// MMSE scaling: SNR * <h, a> / (1 + SNR*||h||^2), with <h, a> the conjugated
// inner product sum(conj(h_l) * a_l).
Complex mmse_alpha(const ChannelVector& h, const CoeffVector& a, Snr snr);

// Closed-form maximum computation rate:
// log2( (||a||^2 - SNR*|<h,a>|^2 / (1 + SNR*||h||^2))^-1 ).
ComputationResult comp_rate(const ChannelVector& h, const CoeffVector& a, Snr snr);

// Real-channel analogue; rates carry a factor 1/2.
ComputationResult comp_rate_real(const std::vector<double>& h,
                                 const std::vector<std::int64_t>& a, Snr snr);

// Symmetric-rate baseline for decoding all messages first:
// (1/2) * log2(1 + SNR * sum |h_l|^2).
double mac_symmetric_rate(const ChannelVector& h, Snr snr);

// Rate of decoding message m while treating the rest as noise. m is 1-based.
double interference_as_noise_rate(const ChannelVector& h, std::size_t m, Snr snr);

// Genie-aided upper bound on the rate of message ell (1-based):
// min over relays using ell of log2(1 + |h_{m,ell}|^2 * SNR).
double genie_upper_bound(const std::vector<ChannelVector>& h_list,
                         const std::vector<CoeffVector>& a_list, std::size_t ell, Snr snr);

// Second-equation rate under successive cancellation of the first equation.
struct ScSecondResult {
    double rate = 0.0;
    Complex beta{};
    GaussInt tau{};
};

ScSecondResult sc_second_rate(const ChannelVector& h, const CoeffVector& a,
                              const CoeffVector& b, Snr snr);

// Per-transmitter split of power between superposition levels A and B.
struct SuperpositionConfig {
    std::vector<Complex> gamma_a;
    std::vector<Complex> gamma_b;

    SuperpositionConfig(std::vector<Complex> ga, std::vector<Complex> gb);
    std::size_t size() const { return gamma_a.size(); }
};

// Rates for decoding an equation from level A and then one from level B.
// Both values are clamped at zero.
std::pair<double, double> superposition_rates(const ChannelVector& h,
                                              const SuperpositionConfig& cfg,
                                              const CoeffVector& a, const CoeffVector& b,
                                              Snr snr);

// Per-real-dimension variance of the effective noise after scaling:
// |alpha|^2 / 2 + (SNR/2) * ||alpha*h - a||^2.
double equivalent_noise_variance(const ChannelVector& h, const CoeffVector& a, Complex alpha,
                                 Snr snr);

struct HadamardNetworkRates {
    double comp = 0.0;
    double df = 0.0;
    double af_cf = 0.0;
    double upper = 0.0;
};

// Per-user rates for the M-relay network with a Hadamard channel matrix.
HadamardNetworkRates hadamard_network_rates(int m, Snr snr);

} // namespace cnf::rates
