// Ground-truth solvers: brute-force enumeration over monotone partitional
// profiles, the polynomial special case for two-value supports, and a grid
// search showing randomized structures cannot beat deterministic ones.
#pragma once

#include <cstdint>

#include "optsig/auction.hpp"
#include "optsig/signals.hpp"

namespace optsig {

struct ExactOptions {
    std::int64_t max_profiles = 10'000'000;
    int threads = 1;
};

struct ExactResult {
    SignalProfile profile;
    Rat revenue;
    Rat welfare;  // optimal welfare of the instance
};

// Enumerates every profile of monotone partitions with at most k blocks per
// buyer and maximizes the optimal-auction revenue of the induced posteriors.
// Ties: the profile enumerated first. Throws SearchSpaceTooLarge when the
// profile count exceeds opts.max_profiles.
ExactResult solve_exact(const Instance& inst, int k, const ExactOptions& opts = {});

// Polynomial-time solver for instances where every buyer has at most two
// support values: at most one buyer pools their two values, everyone else is
// fully disclosed. Throws SupportTooLarge otherwise.
ExactResult solve_support2(const Instance& inst);

// Grid search over randomized monotone structures in which one boundary
// value splits between two adjacent signals (mixing probability on a grid of
// step `gridstep`). Returns true iff no randomized structure earns strictly
// more than solve_exact. Intended for small instances (n <= 2, m <= 3).
bool randomized_spot_check(const Instance& inst, const Rat& gridstep);

}  // namespace optsig
