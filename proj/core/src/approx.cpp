#include "optsig/approx.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace optsig {

std::vector<Rat> win_probabilities(const Instance& inst) {
    validate(inst);
    const int n = inst.buyer_count();
    std::vector<Rat> q(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        const auto& d = inst.buyers[i];
        for (int a = 0; a < d.size(); ++a) {
            // Buyer i wins at value v when everyone before stays strictly
            // below and everyone after stays at or below.
            Rat p = d.mass[a];
            const Rat& v = d.support[a];
            for (int j = 0; j < n && p != 0; ++j) {
                if (j == i) continue;
                const auto& e = inst.buyers[j];
                Rat cdf = 0;
                for (int b = 0; b < e.size(); ++b) {
                    if (e.support[b] < v || (j > i && e.support[b] == v))
                        cdf += e.mass[b];
                }
                p *= cdf;
            }
            q[i] += p;
        }
    }
    return q;
}

QuantileCut binary_signal(const DiscreteDistribution& dist, const Rat& q) {
    if (q < 0 || q > 1) throw std::invalid_argument("win probability outside [0, 1]");
    QuantileCut cut;
    cut.q = q;
    if (q == 0) {
        cut.cut_index = dist.size() - 1;
        cut.threshold = dist.support.back();
        cut.d = 0;
        cut.b = cut.threshold;
        return cut;
    }
    // Threshold: minimum value whose CDF reaches 1 - q.
    Rat cdf = 0;
    int idx = dist.size() - 1;
    for (int i = 0; i < dist.size(); ++i) {
        cdf += dist.mass[i];
        if (cdf >= 1 - q) {
            idx = i;
            break;
        }
    }
    cut.cut_index = idx;
    cut.threshold = dist.support[idx];
    cut.d = (cdf - 1 + q) / dist.mass[idx];

    Rat high_mass = cut.d * dist.mass[idx];
    Rat high_weighted = cut.threshold * high_mass;
    for (int i = idx + 1; i < dist.size(); ++i) {
        high_mass += dist.mass[i];
        high_weighted += dist.support[i] * dist.mass[i];
    }
    // high_mass == q exactly by construction of d.
    cut.b = high_weighted / high_mass;
    return cut;
}

DiscreteDistribution MixedBinaryProfile::posterior(const DiscreteDistribution& dist,
                                                   int buyer) const {
    const QuantileCut& cut = cuts.at(buyer);
    std::vector<std::pair<Rat, Rat>> atoms;
    if (cut.q > 0) atoms.emplace_back(cut.b, cut.q);
    if (cut.q < 1) {
        Rat low_mass = 1 - cut.q;
        Rat low_weighted = dist.mean() - cut.b * cut.q;
        atoms.emplace_back(low_weighted / low_mass, low_mass);
    }
    return distribution_from_atoms(std::move(atoms));
}

ApproxResult solve_approx(const Instance& inst) {
    ApproxResult res;
    std::vector<Rat> q = win_probabilities(inst);
    const int n = inst.buyer_count();
    for (int i = 0; i < n; ++i)
        res.profile.cuts.push_back(binary_signal(inst.buyers[i], q[i]));

    // Offer order: decreasing high-signal mean, ties to the lower index.
    // Buyers that never receive the high signal contribute nothing.
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (q[i] > 0) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return res.profile.cuts[a].b > res.profile.cuts[b].b;
    });
    res.order = order;

    res.revenue = 0;
    Rat survive = 1;
    for (int i : order) {
        const QuantileCut& cut = res.profile.cuts[i];
        res.schedule.schedule.push_back({i, 1, cut.b});
        res.revenue += cut.b * cut.q * survive;
        survive *= 1 - cut.q;
    }
    return res;
}

}  // namespace optsig
