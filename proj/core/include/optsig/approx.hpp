// Constant-factor approximation: a binary signal per buyer (high signal sent
// with probability exactly equal to the buyer's win probability) followed by
// sequential posted prices in decreasing order of the high-signal mean.
// Guarantees revenue >= (1 - 1/e) * optimal welfare.
#pragma once

#include <vector>

#include "optsig/auction.hpp"
#include "optsig/instance.hpp"

namespace optsig {

// The binary signal for one buyer at win probability q: the high signal is
// sent with probability 1 above the threshold value, with probability d at
// the threshold, never below; b is the high signal's conditional mean.
struct QuantileCut {
    Rat q;           // target high-signal probability
    int cut_index;   // index of the threshold value in the support
    Rat threshold;   // the threshold value itself
    Rat d;           // mixing mass at the threshold, in [0, 1]
    Rat b;           // E[v | high signal] (the threshold value when q == 0)
};

// One randomized binary structure per buyer. This is the one non-partitional
// structure in the library; everything else is a deterministic partition.
struct MixedBinaryProfile {
    std::vector<QuantileCut> cuts;

    // The two-atom posterior {E[v|low], E[v|high]} for one buyer; a single
    // atom when q is 0 or 1.
    DiscreteDistribution posterior(const DiscreteDistribution& dist, int buyer) const;
};

struct ApproxResult {
    MixedBinaryProfile profile;
    std::vector<int> order;  // buyers in offer order (decreasing b, ties by index)
    SequentialPostedPrice schedule;
    Rat revenue;
};

// q_i = P(v_i is the maximum), ties won by the smallest buyer index; the
// probabilities sum to exactly 1.
std::vector<Rat> win_probabilities(const Instance& inst);

// Requires 0 <= q <= 1. With q == 0 the high signal never fires and b is the
// top support value by convention.
QuantileCut binary_signal(const DiscreteDistribution& dist, const Rat& q);

ApproxResult solve_approx(const Instance& inst);

}  // namespace optsig
