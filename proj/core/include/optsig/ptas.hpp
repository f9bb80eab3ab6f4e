// Polynomial-time approximation scheme for the joint signal/auction design.
//
// After welfare-normalizing the instance, revenue maximization becomes
// virtual-welfare maximization over regular posteriors. Virtual-value
// distributions are snapped to a grid: values rounded down to multiples of
// eps (values above 1/eps moved into a compensation term), masses rounded
// down to multiples of eps^4/(nm), compensation to multiples of eps/(nm).
// One dynamic program enumerates, per buyer, every grid pair reachable by a
// regular monotone partition; a second one maximizes the expected maximum
// over buyers. Everything stays in exact rational arithmetic.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "optsig/auction.hpp"
#include "optsig/signals.hpp"

namespace optsig {

// Value grid {z*eps : z in N, z*eps <= 1/eps}, all rational.
struct Grid {
    explicit Grid(Rat eps_);
    Rat eps;
    std::int64_t z_max;  // floor(1/eps^2); the grid has z_max + 1 points

    Rat value_of(std::int64_t z) const { return Rat(static_cast<long>(z)) * eps; }
    Rat cap() const { return 1 / eps; }
    // Grid index for a (non-negative, <= 1/eps) virtual value.
    std::int64_t snap_down(const Rat& v) const;
};

// Sparse masses by grid index; entry 0 carries the residual so the total is
// always exactly 1.
using GridDist = std::map<std::int64_t, Rat>;

Rat grid_mean(const GridDist& dist, const Grid& grid);

// Distribution of max(X, Y) for independent draws from two grid
// distributions (CDF product on the merged index set).
GridDist grid_max(const GridDist& a, const GridDist& b);

struct FeasiblePair {
    GridDist dist;
    Rat comp;  // compensation term: rounded mean contribution of values > 1/eps
    friend bool operator==(const FeasiblePair&, const FeasiblePair&) = default;
    friend bool operator<(const FeasiblePair& a, const FeasiblePair& b) {
        if (a.dist != b.dist)
            return std::lexicographical_compare(a.dist.begin(), a.dist.end(),
                                                b.dist.begin(), b.dist.end());
        return a.comp < b.comp;
    }
};

// VW(G, c) = E[G] + c.
Rat virtual_welfare(const FeasiblePair& pair, const Grid& grid);

// (value, mass) atoms; repeated values allowed and rounded independently.
using AtomList = std::vector<std::pair<Rat, Rat>>;

struct ValueQuantization {
    std::vector<std::pair<std::int64_t, Rat>> atoms;  // per source atom, unaggregated
    std::vector<Rat> truncated_terms;                 // v*mass per atom above 1/eps
    Rat compensation_exact;                           // sum of truncated terms
};

// Value-space step: values <= 0 land on grid point 0, values in (0, 1/eps]
// round down to the grid, values above 1/eps are removed with their mean
// contribution recorded exactly.
ValueQuantization quantize_values(const AtomList& atoms, const Grid& grid);

// Probability-space step: each atom's mass rounds down to a multiple of
// eps^4/(nm) independently (except at grid point 0); the deficit lands on 0.
GridDist quantize_masses(std::span<const std::pair<std::int64_t, Rat>> atoms,
                         const Grid& grid, int n, int m);

// Joint scheme: quantize_values then per-atom quantize_masses, compensation
// rounded down per source atom to a multiple of eps/(nm). Throws
// CompensationOverflow if the rounded compensation exceeds 1.
FeasiblePair quantize_pair(const AtomList& atoms, const Grid& grid, int n, int m);

// --- implementable pairs (per buyer) ------------------------------------

// DP state: k_used signals so far covering support indices [lo, m-1], the
// lowest covered segment being [lo, lo_end]. The sentinel lo == m marks the
// empty start. The pair carries the grid distribution built so far (not yet
// covered values parked at 0) and the compensation.
struct ImplementableKey {
    int k_used = 0;
    int lo = 0;
    int lo_end = 0;
    FeasiblePair pair;
    friend bool operator==(const ImplementableKey&, const ImplementableKey&) = default;
    friend bool operator<(const ImplementableKey& a, const ImplementableKey& b) {
        if (a.k_used != b.k_used) return a.k_used < b.k_used;
        if (a.lo != b.lo) return a.lo < b.lo;
        if (a.lo_end != b.lo_end) return a.lo_end < b.lo_end;
        return a.pair < b.pair;
    }
};

struct ImplementableValue {
    Rat low_seg_virtual;  // largest virtual value any admitted run left in the lowest segment
    std::optional<ImplementableKey> back;
};

struct ImplementableSet {
    std::map<FeasiblePair, ImplementableKey> pairs;  // pair -> witness complete state
    std::map<ImplementableKey, ImplementableValue> table;

    // Reconstructs a monotone partition whose regular posterior quantizes to
    // the given pair.
    MonotonePartition backtrack(const FeasiblePair& pair) const;
};

// All grid pairs reachable by a monotone partition of `dist` into at most
// `max_signals` blocks whose posterior is regular. Assumes the welfare-
// normalized context (values scaled so the instance welfare is 1).
ImplementableSet implementable_pairs(const DiscreteDistribution& dist, int max_signals,
                                     const Grid& grid, int n, int m);

// --- cross-buyer maximization --------------------------------------------

struct WelfareBack {
    std::optional<FeasiblePair> prev;  // state at the previous stage
    FeasiblePair chosen;               // this buyer's implementable pair
};

using WelfareStage = std::map<FeasiblePair, WelfareBack>;

// Stage i holds every reachable pair (running max distribution re-quantized
// in probability space, compensations summed) with one witness predecessor.
std::vector<WelfareStage> virtual_welfare_dp(std::span<const ImplementableSet> sets,
                                             const Grid& grid, int n, int m);

struct PtasResult {
    SignalProfile profile;
    Mechanism mechanism;
    Rat revenue;         // exact revenue of the constructed design, original scale
    Rat vw_certificate;  // DP objective of the chosen state, original scale
};

// Full pipeline: normalize, enumerate implementable pairs per buyer, run the
// cross-buyer DP, backtrack to partitions, price the posteriors optimally
// and rescale. Requires k >= 2 and rational eps in (0, 1/2].
PtasResult solve_ptas(const Instance& inst, int k, const Rat& eps);

}  // namespace optsig
