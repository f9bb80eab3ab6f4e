// Monotone partitional signal structures.
//
// A signal partitions a buyer's support into contiguous blocks; receiving a
// block's signal updates the buyer to the block's conditional distribution,
// so the willingness to pay is the block's posterior mean. Deterministic
// monotone partitions are all the exact solver ever needs to search.
#pragma once

#include <optional>
#include <vector>

#include "optsig/instance.hpp"

namespace optsig {

// Inclusive index range over one buyer's support.
struct Block {
    int lo = 0;
    int hi = 0;
    friend bool operator==(const Block&, const Block&) = default;
    friend auto operator<=>(const Block&, const Block&) = default;
};

// Contiguous, disjoint, ascending blocks covering {0, ..., m-1} exactly.
struct MonotonePartition {
    std::vector<Block> blocks;
    friend bool operator==(const MonotonePartition&, const MonotonePartition&) = default;
    friend auto operator<=>(const MonotonePartition&, const MonotonePartition&) = default;
};

// One partition per buyer.
struct SignalProfile {
    std::vector<MonotonePartition> partitions;
};

int signal_count(const MonotonePartition& part);

// Full disclosure (singleton blocks).
MonotonePartition finest_partition(int m);
// No disclosure (one block).
MonotonePartition coarsest_partition(int m);

// Throws std::invalid_argument when the blocks do not form a monotone
// partition of {0, ..., m-1}.
void check_partition(const MonotonePartition& part, int m);

// Bayesian update: one atom per block at the block's conditional mean, with
// the block's total probability. Atoms with equal means merge. Preserves the
// mean exactly.
DiscreteDistribution induce_posterior(const DiscreteDistribution& dist,
                                      const MonotonePartition& part);

std::vector<DiscreteDistribution> induce_posteriors(const Instance& inst,
                                                    const SignalProfile& profile);

// Streaming enumeration of all monotone partitions of {0, ..., m-1} into at
// most k blocks, each exactly once: block count ascending, then boundary
// positions in lexicographic order. Restartable and copyable.
class PartitionEnumerator {
  public:
    PartitionEnumerator(int m, int k);
    std::optional<MonotonePartition> next();
    void reset();

  private:
    int m_;
    int k_;
    int blocks_;              // current block count
    std::vector<int> starts_; // current block start indices (starts_[0] == 0)
    bool exhausted_;
    bool advance();
};

std::vector<MonotonePartition> enumerate_partitions(int m, int k);

// Number of partitions yielded: sum over j <= min(k, m) of C(m-1, j-1).
mpz_class partition_count(int m, int k);

}  // namespace optsig
