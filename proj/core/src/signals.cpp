#include "optsig/signals.hpp"

#include <stdexcept>

namespace optsig {

int signal_count(const MonotonePartition& part) {
    return static_cast<int>(part.blocks.size());
}

MonotonePartition finest_partition(int m) {
    MonotonePartition p;
    for (int i = 0; i < m; ++i) p.blocks.push_back({i, i});
    return p;
}

MonotonePartition coarsest_partition(int m) { return {{Block{0, m - 1}}}; }

void check_partition(const MonotonePartition& part, int m) {
    if (part.blocks.empty()) throw std::invalid_argument("partition has no blocks");
    int expect = 0;
    for (const auto& b : part.blocks) {
        if (b.lo != expect || b.hi < b.lo)
            throw std::invalid_argument("blocks are not contiguous ascending");
        expect = b.hi + 1;
    }
    if (expect != m) throw std::invalid_argument("blocks do not cover the support");
}

DiscreteDistribution induce_posterior(const DiscreteDistribution& dist,
                                      const MonotonePartition& part) {
    check_partition(part, dist.size());
    std::vector<std::pair<Rat, Rat>> atoms;
    atoms.reserve(part.blocks.size());
    for (const auto& b : part.blocks) {
        Rat prob = 0, weighted = 0;
        for (int i = b.lo; i <= b.hi; ++i) {
            prob += dist.mass[i];
            weighted += dist.support[i] * dist.mass[i];
        }
        atoms.emplace_back(weighted / prob, prob);
    }
    return distribution_from_atoms(std::move(atoms));
}

std::vector<DiscreteDistribution> induce_posteriors(const Instance& inst,
                                                    const SignalProfile& profile) {
    if (profile.partitions.size() != inst.buyers.size())
        throw std::invalid_argument("profile size does not match buyer count");
    std::vector<DiscreteDistribution> out;
    out.reserve(inst.buyers.size());
    for (std::size_t i = 0; i < inst.buyers.size(); ++i)
        out.push_back(induce_posterior(inst.buyers[i], profile.partitions[i]));
    return out;
}

PartitionEnumerator::PartitionEnumerator(int m, int k) : m_(m), k_(k) {
    if (m < 1 || k < 1) throw std::invalid_argument("need m >= 1 and k >= 1");
    reset();
}

void PartitionEnumerator::reset() {
    blocks_ = 1;
    starts_ = {0};
    exhausted_ = false;
}

std::optional<MonotonePartition> PartitionEnumerator::next() {
    if (exhausted_) return std::nullopt;
    MonotonePartition p;
    for (int b = 0; b < blocks_; ++b) {
        int hi = (b + 1 < blocks_) ? starts_[b + 1] - 1 : m_ - 1;
        p.blocks.push_back({starts_[b], hi});
    }
    if (!advance()) exhausted_ = true;
    return p;
}

bool PartitionEnumerator::advance() {
    // Next combination of block starts (starts_[1..blocks_-1] is a strictly
    // increasing sequence drawn from {1, ..., m_-1}); when combinations for
    // the current block count run out, grow the block count.
    for (int i = blocks_ - 1; i >= 1; --i) {
        int limit = m_ - (blocks_ - i);  // max start for slot i
        if (starts_[i] < limit) {
            ++starts_[i];
            for (int j = i + 1; j < blocks_; ++j) starts_[j] = starts_[j - 1] + 1;
            return true;
        }
    }
    if (blocks_ < std::min(k_, m_)) {
        ++blocks_;
        starts_.resize(blocks_);
        for (int j = 1; j < blocks_; ++j) starts_[j] = j;
        return true;
    }
    return false;
}

std::vector<MonotonePartition> enumerate_partitions(int m, int k) {
    std::vector<MonotonePartition> out;
    PartitionEnumerator en(m, k);
    while (auto p = en.next()) out.push_back(std::move(*p));
    return out;
}

mpz_class partition_count(int m, int k) {
    mpz_class total = 0;
    for (int j = 1; j <= std::min(k, m); ++j) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), m - 1, j - 1);
        total += c;
    }
    return total;
}

}  // namespace optsig
