#include "optsig/exact.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace optsig {

namespace {

struct Best {
    bool set = false;
    Rat revenue;
    std::int64_t rank = 0;  // enumeration rank, for deterministic ties
    std::vector<int> choice;

    void offer(const Rat& rev, std::int64_t r, const std::vector<int>& c) {
        if (!set || rev > revenue || (rev == revenue && r < rank)) {
            set = true;
            revenue = rev;
            rank = r;
            choice = c;
        }
    }
};

Rat profile_revenue(const std::vector<std::vector<DiscreteDistribution>>& posteriors,
                    const std::vector<int>& choice) {
    std::vector<DiscreteDistribution> profile;
    profile.reserve(choice.size());
    for (std::size_t i = 0; i < choice.size(); ++i)
        profile.push_back(posteriors[i][choice[i]]);
    return optimal_revenue(profile);
}

// Enumerates all choices with choice[0] fixed, odometer order on the rest.
void scan_block(const std::vector<std::vector<DiscreteDistribution>>& posteriors,
                int first_choice, std::int64_t rank_base, Best& best) {
    const int n = static_cast<int>(posteriors.size());
    std::vector<int> choice(n, 0);
    choice[0] = first_choice;
    std::int64_t rank = rank_base;
    while (true) {
        best.offer(profile_revenue(posteriors, choice), rank, choice);
        ++rank;
        int i = n - 1;
        for (; i >= 1; --i) {
            if (choice[i] + 1 < static_cast<int>(posteriors[i].size())) {
                ++choice[i];
                std::fill(choice.begin() + i + 1, choice.end(), 0);
                break;
            }
        }
        if (i < 1) break;
    }
}

}  // namespace

ExactResult solve_exact(const Instance& inst, int k, const ExactOptions& opts) {
    validate(inst);
    if (k < 1) throw std::invalid_argument("need k >= 1");
    const int n = inst.buyer_count();

    mpz_class total = 1;
    for (const auto& b : inst.buyers) total *= partition_count(b.size(), k);
    if (total > opts.max_profiles)
        throw SearchSpaceTooLarge("profile count " + total.get_str() + " exceeds guard " +
                                  std::to_string(opts.max_profiles));

    std::vector<std::vector<MonotonePartition>> parts(n);
    std::vector<std::vector<DiscreteDistribution>> posteriors(n);
    for (int i = 0; i < n; ++i) {
        parts[i] = enumerate_partitions(inst.buyers[i].size(), k);
        for (const auto& p : parts[i])
            posteriors[i].push_back(induce_posterior(inst.buyers[i], p));
    }

    std::int64_t per_first = 1;
    for (int i = 1; i < n; ++i) per_first *= static_cast<std::int64_t>(parts[i].size());

    Best best;
    const int first_count = static_cast<int>(parts[0].size());
    int threads = std::max(1, std::min(opts.threads, first_count));
    if (threads == 1) {
        for (int c = 0; c < first_count; ++c)
            scan_block(posteriors, c, c * per_first, best);
    } else {
        // Partition choices for the first buyer split across workers; the
        // enumeration rank keeps tie-breaking identical to the serial scan.
        std::mutex merge_mutex;
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                Best local;
                int c;
                while ((c = next.fetch_add(1)) < first_count)
                    scan_block(posteriors, c, c * per_first, local);
                if (local.set) {
                    std::lock_guard<std::mutex> lock(merge_mutex);
                    best.offer(local.revenue, local.rank, local.choice);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    ExactResult res;
    for (int i = 0; i < n; ++i) res.profile.partitions.push_back(parts[i][best.choice[i]]);
    res.revenue = best.revenue;
    res.welfare = expected_max(inst.buyers);
    return res;
}

ExactResult solve_support2(const Instance& inst) {
    validate(inst);
    const int n = inst.buyer_count();
    for (int i = 0; i < n; ++i)
        if (inst.buyers[i].size() > 2) throw SupportTooLarge(i);

    // Candidate structures: pool buyer i* (when it has two values) with full
    // disclosure elsewhere, or full disclosure everywhere.
    auto candidate = [&](int pooled) {
        SignalProfile profile;
        for (int i = 0; i < n; ++i) {
            int m = inst.buyers[i].size();
            profile.partitions.push_back(i == pooled ? coarsest_partition(m)
                                                     : finest_partition(m));
        }
        return profile;
    };

    ExactResult res;
    res.welfare = expected_max(inst.buyers);
    bool have = false;
    for (int pooled = 0; pooled <= n; ++pooled) {
        int target = (pooled < n) ? pooled : -1;  // -1: nobody pools
        if (target >= 0 && inst.buyers[target].size() < 2) continue;
        SignalProfile profile = candidate(target);
        Rat rev = optimal_revenue(induce_posteriors(inst, profile));
        if (!have || rev > res.revenue) {
            have = true;
            res.revenue = rev;
            res.profile = std::move(profile);
        }
    }
    return res;
}

bool randomized_spot_check(const Instance& inst, const Rat& gridstep) {
    validate(inst);
    if (gridstep <= 0 || gridstep >= 1)
        throw std::invalid_argument("gridstep must lie in (0, 1)");
    const int n = inst.buyer_count();
    const int m = inst.max_support_size();
    Rat exact = solve_exact(inst, m).revenue;

    std::vector<std::vector<MonotonePartition>> parts(n);
    for (int i = 0; i < n; ++i) parts[i] = enumerate_partitions(inst.buyers[i].size(), m);

    // Mixing grid: theta in (0, 1) exclusive; the endpoints are partitions
    // and already covered by solve_exact's search space.
    std::vector<Rat> thetas;
    for (Rat t = gridstep; t < 1; t += gridstep) thetas.push_back(t);

    std::vector<int> choice(n, 0);
    while (true) {
        // Base posteriors for this profile of partitions.
        std::vector<DiscreteDistribution> base(n);
        for (int i = 0; i < n; ++i)
            base[i] = induce_posterior(inst.buyers[i], parts[i][choice[i]]);

        // One buyer randomizes one boundary value between adjacent blocks:
        // the first value of the upper block keeps only a (1-theta) share
        // there and sends the lower block's signal with probability theta.
        for (int i = 0; i < n; ++i) {
            const auto& partition = parts[i][choice[i]];
            const auto& dist = inst.buyers[i];
            for (std::size_t b = 0; b + 1 < partition.blocks.size(); ++b) {
                int split = partition.blocks[b + 1].lo;
                for (const Rat& theta : thetas) {
                    std::vector<std::pair<Rat, Rat>> atoms;
                    for (std::size_t bb = 0; bb < partition.blocks.size(); ++bb) {
                        const Block& blk = partition.blocks[bb];
                        Rat prob = 0, weighted = 0;
                        for (int a = blk.lo; a <= blk.hi; ++a) {
                            Rat f = dist.mass[a];
                            if (a == split) f *= 1 - theta;
                            prob += f;
                            weighted += dist.support[a] * f;
                        }
                        if (bb == b) {
                            Rat extra = dist.mass[split] * theta;
                            prob += extra;
                            weighted += dist.support[split] * extra;
                        }
                        if (prob > 0) atoms.emplace_back(weighted / prob, prob);
                    }
                    std::vector<DiscreteDistribution> profile = base;
                    profile[i] = distribution_from_atoms(std::move(atoms));
                    if (optimal_revenue(profile) > exact) return false;
                }
            }
        }

        int i = n - 1;
        for (; i >= 0; --i) {
            if (choice[i] + 1 < static_cast<int>(parts[i].size())) {
                ++choice[i];
                std::fill(choice.begin() + i + 1, choice.end(), 0);
                break;
            }
        }
        if (i < 0) break;
    }
    return true;
}

}  // namespace optsig
