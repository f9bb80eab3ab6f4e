// Single-item optimal-auction machinery for profiles of posterior
// distributions: virtual values, regularity, ironing, exact optimal revenue,
// and evaluators for sequential posted-price and permutation-induced
// mechanisms.
#pragma once

#include <span>
#include <variant>
#include <vector>

#include "optsig/instance.hpp"

namespace optsig {

struct VirtualAtom {
    Rat value;
    Rat mass;
    Rat virtual_value;  // v - (1-F(v))(v+ - v)/f(v), inclusive CDF
    Rat ironed;         // slopes of the concave hull of the quantile-revenue curve
};

// Atoms ascending by value. Invariants: the top atom's virtual value equals
// its value; `ironed` is non-decreasing and mass-weighted sums of `ironed`
// and `virtual_value` agree.
struct VirtualValueTable {
    std::vector<VirtualAtom> atoms;
};

// Builds the table for one distribution; `ironed` is filled immediately.
VirtualValueTable virtual_values(const DiscreteDistribution& dist);

// True iff the (un-ironed) virtual values are non-decreasing.
bool is_regular(const VirtualValueTable& table);

// Recomputes `ironed` from `virtual_value` via the upper concave envelope of
// the cumulative revenue curve over quantiles, in exact arithmetic.
// Idempotent; for regular tables ironed == virtual.
VirtualValueTable iron(VirtualValueTable table);

// Revenue of the optimal BIC-IIR auction for the given posterior profile:
// E[max(0, max_i ironed_i(v_i))], exact.
Rat optimal_revenue(std::span<const DiscreteDistribution> profile);

// --- mechanisms over signals -------------------------------------------
//
// Both mechanism kinds reference a buyer's signals by block index into the
// buyer's posterior distribution (atom index, ascending by posterior mean).

struct PostedPriceStep {
    int buyer = 0;
    int block = 0;
    Rat price;
};

// Ordered take-it-or-leave-it offers; a buyer accepts when the realized
// block's posterior mean is at least the price (acceptance at equality).
struct SequentialPostedPrice {
    std::vector<PostedPriceStep> schedule;
};

struct PermutationEntry {
    int buyer = 0;
    int block = 0;
};

// Allocates to the first entry whose signal realized. BIC-IIR requires each
// buyer's included blocks to form a suffix of their signal list, appearing
// in descending block order.
struct PermutationMechanism {
    std::vector<PermutationEntry> order;
};

struct Mechanism {
    std::variant<SequentialPostedPrice, PermutationMechanism> kind;
};

// Exact expected revenue of a posted-price schedule:
//   sum_t price_t * P(accept_t) * prod_{s<t} (1 - P(accept_s)).
// Throws InvalidBlockRef on out-of-range references.
Rat eval_sequential(std::span<const DiscreteDistribution> profile,
                    const SequentialPostedPrice& mech);

// Exact expected revenue of a permutation mechanism via interim allocation
// differences. Throws InvalidPermutation when the suffix/descending
// invariant fails or references are out of range.
Rat eval_permutation(std::span<const DiscreteDistribution> profile,
                     const PermutationMechanism& mech);

Rat eval_mechanism(std::span<const DiscreteDistribution> profile, const Mechanism& mech);

// The revenue-optimal permutation: all signals with positive ironed virtual
// value, ordered by descending ironed value (ties: lower buyer first, then
// higher block first). For regular profiles its revenue equals
// optimal_revenue(profile).
PermutationMechanism descending_virtual_permutation(
    std::span<const DiscreteDistribution> profile);

}  // namespace optsig
