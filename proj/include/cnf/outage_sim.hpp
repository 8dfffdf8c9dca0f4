#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cnf/channel.hpp"

namespace cnf::outage {

using Matrix2 = std::array<std::array<Complex, 2>, 2>; // H[m][l], relay m

// Distributed-MIMO strategy rates for one fading draw, each clamped to
// [0, C] where applicable.
struct MimoRates {
    double comp = 0.0;    // best equations + solvability over C
    double comp_nz = 0.0; // diagonal coefficient forced nonzero
    double df = 0.0;
    double cf = 0.0;
    double upper = 0.0;
};

MimoRates mimo_strategy_rates(const Matrix2& H, Snr snr, double C);

// Two-way relay strategy rates for one draw (uplink gains h11, h12,
// downlink gains h3, h4), clamped at 0.
struct TwoWayRates {
    double comp = 0.0;
    double df = 0.0;
    double af = 0.0;
    double upper = 0.0;
};

TwoWayRates twoway_strategy_rates(Complex h11, Complex h12, Complex h3, Complex h4, Snr snr,
                                  Snr snr_bc);

// Largest rate R with empirical P(rate < R) <= rho: the (floor(rho*N)+1)-th
// ascending order statistic.
double outage_rate(std::vector<double> samples, double rho);

struct MimoConfig {
    double c = 2.0;   // bit-pipe rate
    double rho = 0.25;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
};

struct TwoWayConfig {
    double bc_factor = 2.0; // SNR_BC = bc_factor * SNR
    double rho = 1.0 / 3.0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
};

struct MimoCurve {
    std::vector<double> snr_db;
    std::vector<MimoRates> rates; // outage rates per grid point
};

struct TwoWayCurve {
    std::vector<double> snr_db;
    std::vector<TwoWayRates> rates;
};

// Fading draws are keyed by (seed, trial) and reused across grid points, so
// curves are deterministic and comparable point to point.
MimoCurve sweep_mimo(const MimoConfig& cfg, const std::vector<double>& snr_db_grid);
TwoWayCurve sweep_twoway(const TwoWayConfig& cfg, const std::vector<double>& snr_db_grid);

// Probability that the two relays' best (or best diagonal-nonzero)
// coefficient vectors form a singular matrix; a relay without any
// positive-rate equation counts as failure.
double rank_failure_probability(Snr snr, std::uint64_t trials, std::uint64_t seed,
                                bool constrained);

std::string mimo_curve_csv(const MimoCurve& curve);       // snr_db,comp,comp_nz,df,cf,upper
std::string twoway_curve_csv(const TwoWayCurve& curve);   // snr_db,comp,df,af,upper

std::string mimo_config_json(const MimoConfig& cfg);
MimoConfig mimo_config_from_json(const std::string& text);
std::string twoway_config_json(const TwoWayConfig& cfg);
TwoWayConfig twoway_config_from_json(const std::string& text);

} // namespace cnf::outage
