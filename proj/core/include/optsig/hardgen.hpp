// Generators for the two families of hardness instances, with closed-form
// identities exposed for verification: an equal-sum-partition family on
// three-value supports, and a subset-product family for the binary-signal
// problem.
#pragma once

#include <vector>

#include "optsig/instance.hpp"

namespace optsig {

// Family encoding an equal-sum partition question. Buyer i < n has values
// {0, t_i + 1, 3}; the extra final buyer is a point mass at 1. Constructed
// so pooling {3, t_i + 1} always yields a signal of virtual value exactly 2.
struct PartitionReduction {
    std::vector<long> c;  // sorted descending
    mpz_class big_m;      // c[0] * 2^n
    std::vector<Rat> t, r, q;
    Instance instance;
};

// Requires every c_i > 0. Input order does not matter; c is sorted
// internally.
PartitionReduction make_partition_reduction(std::vector<long> c);

// Virtual value of the pooled top signal {3, t_i+1} of buyer i; equals 2
// exactly for every generated instance.
Rat pooled_virtual_value(const PartitionReduction& red, int buyer);

// Virtual value of the middle value under full disclosure; strictly below 1.
Rat disclosed_mid_virtual_value(const PartitionReduction& red, int buyer);

// Family encoding a subset-product question. Buyer i has values
// {0, (B^2 - a_i)/(B^2 + 1), 1} with masses {1/a_i^2, (a_i-1)/a_i^2,
// (a_i-1)/a_i}.
struct SubsetProductReduction {
    std::vector<long> a;
    long b_param = 0;
    Instance instance;
};

// Requires every a_i > 1 and B >= 1; the instance is validated (B^2 must
// exceed every a_i for the middle value to be positive).
SubsetProductReduction make_subset_product_reduction(std::vector<long> a, long b_param);

// Virtual value of the pooled {mid, 1} signal: B^2/(B^2+1), independent of i.
Rat pooled_high_virtual_value(const SubsetProductReduction& red);

// Virtual value of the pooled {0, mid} signal of buyer i: (1-a_i^2)/(B^2+1).
Rat pooled_low_virtual_value(const SubsetProductReduction& red, int buyer);

// Closed-form revenue of the canonical posted-price mechanism when the
// buyers in T pool their top two values and the rest (S) are offered price 1
// first:
//   1 - prod_{i in S} 1/a_i
//     + prod_{i in S} 1/a_i * (1 - prod_{j in T} 1/a_j^2) * B^2/(B^2+1).
// `in_t[i]` marks membership of buyer i in T.
Rat closed_form_revenue(const SubsetProductReduction& red, const std::vector<bool>& in_t);

}  // namespace optsig
