// Problem instances: one finite value distribution per buyer.
//
// All types are immutable value types once built; every function here is
// pure, so concurrent use needs no synchronization.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "optsig/errors.hpp"
#include "optsig/rational.hpp"

namespace optsig {

// Finite distribution with strictly increasing non-negative support and
// positive masses summing to exactly 1.
struct DiscreteDistribution {
    std::vector<Rat> support;
    std::vector<Rat> mass;

    int size() const { return static_cast<int>(support.size()); }
    Rat mean() const;
};

// Sorts atoms by value, merges equal values (summing mass) and drops
// zero-mass atoms. Does not check non-negativity or total mass.
DiscreteDistribution distribution_from_atoms(std::vector<std::pair<Rat, Rat>> atoms);

struct Instance {
    std::vector<DiscreteDistribution> buyers;

    int buyer_count() const { return static_cast<int>(buyers.size()); }
    // max_i |V_i|
    int max_support_size() const;
};

// Checks every type invariant; throws ValidationError naming the first
// offending buyer.
void validate(const Instance& inst);

// E[max_i v_i] for independent draws, computed exactly via the product of
// CDFs over the merged support. This equals the optimal welfare: full
// disclosure plus efficient allocation is welfare-optimal.
Rat expected_max(std::span<const DiscreteDistribution> dists);

Rat optimal_welfare(const Instance& inst);

// Divides every support value by the optimal welfare so the result has
// optimal welfare exactly 1; returns the divisor as `scale`. Throws
// ZeroWelfare when all values are 0.
std::pair<Instance, Rat> normalize(const Instance& inst);

}  // namespace optsig
