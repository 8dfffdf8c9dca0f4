#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cnf/channel.hpp"
#include "cnf/gauss_int.hpp"

namespace cnf::search {

// Hard cap on enumerated candidates; exceeding it raises ResourceError.
inline constexpr std::size_t kCandidateCeiling = 10'000'000;

// All canonical nonzero coefficient vectors inside the zero-rate norm ball.
struct CandidateSet {
    ChannelVector channel;
    Snr snr;
    std::int64_t norm_bound = 0; // largest admissible ||a||^2 (inclusive)
    std::vector<CoeffVector> candidates;
};

// Every nonzero a with ||a||^2 < 1 + SNR*||h||^2 can give positive rate; one
// representative per rotation class {a, -a, ja, -ja}.
CandidateSet enumerate_candidates(const ChannelVector& h, Snr snr,
                                  std::size_t ceiling = kCandidateCeiling);

struct BestEquation {
    CoeffVector a;
    double rate_bits = 0.0;
};

// Highest-rate coefficient vector, or nullopt when no vector achieves a
// positive rate. Ties broken by ascending lexicographic order of the
// canonical representative.
std::optional<BestEquation> best_equation(const ChannelVector& h, Snr snr);

// Same, restricted to vectors with a_l != 0 for every 1-based index in
// `required`.
std::optional<BestEquation> best_nonzero_equation(const ChannelVector& h, Snr snr,
                                                  const std::set<std::size_t>& required);

struct RateProfile {
    std::vector<std::pair<CoeffVector, double>> rows; // descending rate
};

// Top-k candidates by computation rate (may include non-positive rates).
RateProfile rate_profile(const ChannelVector& h, Snr snr, std::size_t top_k);

} // namespace cnf::search
