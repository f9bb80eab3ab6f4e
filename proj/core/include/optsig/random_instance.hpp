// Seeded random instances for tests and experiments.
#pragma once

#include <random>

#include "optsig/instance.hpp"

namespace optsig {

struct RandomInstanceParams {
    int min_buyers = 1;
    int max_buyers = 3;
    int min_support = 1;
    int max_support = 4;
    long max_value = 10;   // integer support values drawn from [0, max_value]
    long max_weight = 12;  // masses are integer weights normalized to sum 1
};

// Distinct sorted integer support values with random rational masses; always
// valid.
Instance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params);

// Single random distribution with the same conventions.
DiscreteDistribution random_distribution(std::mt19937_64& rng, int min_support,
                                         int max_support, long max_value,
                                         long max_weight = 12);

}  // namespace optsig
