#include "optsig/auction.hpp"

#include <algorithm>

namespace optsig {

VirtualValueTable virtual_values(const DiscreteDistribution& dist) {
    const int m = dist.size();
    VirtualValueTable table;
    table.atoms.resize(m);
    Rat cdf = 0;
    for (int i = 0; i < m; ++i) {
        cdf += dist.mass[i];
        VirtualAtom& a = table.atoms[i];
        a.value = dist.support[i];
        a.mass = dist.mass[i];
        if (i + 1 < m) {
            a.virtual_value =
                a.value - (1 - cdf) * (dist.support[i + 1] - a.value) / a.mass;
        } else {
            a.virtual_value = a.value;  // 1 - F vanishes at the top atom
        }
    }
    return iron(std::move(table));
}

bool is_regular(const VirtualValueTable& table) {
    for (std::size_t i = 1; i < table.atoms.size(); ++i)
        if (table.atoms[i].virtual_value < table.atoms[i - 1].virtual_value) return false;
    return true;
}

VirtualValueTable iron(VirtualValueTable table) {
    const int m = static_cast<int>(table.atoms.size());
    // Revenue curve over quantiles in descending-value order:
    // q_j = mass of the top j atoms, R(q_j) = value_j * q_j (the revenue of
    // posting the j-th highest value as price). point[0] = (0, 0).
    std::vector<std::pair<Rat, Rat>> pts;
    pts.reserve(m + 1);
    pts.emplace_back(Rat(0), Rat(0));
    Rat q = 0;
    for (int j = m - 1; j >= 0; --j) {
        q += table.atoms[j].mass;
        pts.emplace_back(q, table.atoms[j].value * q);
    }

    // Upper concave envelope by monotone stack; hull vertices are a subset
    // of pts and include both endpoints.
    std::vector<std::pair<Rat, Rat>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // Keep slopes strictly decreasing: pop b when slope(a,p) >= slope(a,b).
            if ((p.second - a.second) * (b.first - a.first) >=
                (b.second - a.second) * (p.first - a.first)) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }

    // The ironed value of the j-th highest atom is the hull slope over the
    // quantile interval (q_{j-1}, q_j].
    std::size_t seg = 0;
    for (int j = 1; j <= m; ++j) {
        while (hull[seg + 1].first < pts[j].first) ++seg;
        const auto& a = hull[seg];
        const auto& b = hull[seg + 1];
        table.atoms[m - j].ironed = (b.second - a.second) / (b.first - a.first);
    }
    return table;
}

Rat optimal_revenue(std::span<const DiscreteDistribution> profile) {
    // E[max(0, max_i X_i)] = E[max_i max(0, X_i)] with X_i the ironed
    // virtual value of buyer i's draw.
    std::vector<DiscreteDistribution> clamped;
    clamped.reserve(profile.size());
    for (const auto& dist : profile) {
        VirtualValueTable t = virtual_values(dist);
        std::vector<std::pair<Rat, Rat>> atoms;
        atoms.reserve(t.atoms.size());
        for (const auto& a : t.atoms)
            atoms.emplace_back(a.ironed > 0 ? a.ironed : Rat(0), a.mass);
        clamped.push_back(distribution_from_atoms(std::move(atoms)));
    }
    return expected_max(clamped);
}

namespace {

void check_block_ref(std::span<const DiscreteDistribution> profile, int buyer, int block,
                     const char* what) {
    if (buyer < 0 || buyer >= static_cast<int>(profile.size()) || block < 0 ||
        block >= profile[buyer].size())
        throw InvalidBlockRef(std::string(what) + ": buyer " + std::to_string(buyer) +
                              ", block " + std::to_string(block));
}

}  // namespace

Rat eval_sequential(std::span<const DiscreteDistribution> profile,
                    const SequentialPostedPrice& mech) {
    Rat revenue = 0;
    Rat survive = 1;  // probability all earlier offers were rejected
    for (const auto& step : mech.schedule) {
        check_block_ref(profile, step.buyer, step.block, "schedule step");
        const auto& d = profile[step.buyer];
        Rat accept = 0;
        for (int b = 0; b < d.size(); ++b)
            if (d.support[b] >= step.price) accept += d.mass[b];
        revenue += step.price * accept * survive;
        survive *= 1 - accept;
    }
    return revenue;
}

Rat eval_permutation(std::span<const DiscreteDistribution> profile,
                     const PermutationMechanism& mech) {
    const int n = static_cast<int>(profile.size());
    // Validate references plus the suffix/descending invariant per buyer.
    std::vector<std::vector<int>> included(n);  // blocks per buyer, permutation order
    for (const auto& e : mech.order) {
        if (e.buyer < 0 || e.buyer >= n || e.block < 0 || e.block >= profile[e.buyer].size())
            throw InvalidPermutation("permutation references unknown signal");
        included[e.buyer].push_back(e.block);
    }
    for (int i = 0; i < n; ++i) {
        const auto& blocks = included[i];
        for (std::size_t a = 1; a < blocks.size(); ++a)
            if (blocks[a] != blocks[a - 1] - 1)
                throw InvalidPermutation("buyer " + std::to_string(i) +
                                         ": blocks not descending and adjacent");
        if (!blocks.empty() && blocks.front() != profile[i].size() - 1)
            throw InvalidPermutation("buyer " + std::to_string(i) +
                                     ": included blocks are not a suffix");
    }

    // Interim allocation of each entry: the probability it is the first
    // realized signal, i.e. no earlier entry of another buyer realized.
    std::vector<Rat> blocked(n, Rat(0));  // mass of buyer j's signals seen so far
    std::vector<std::vector<Rat>> alloc(n);
    for (int i = 0; i < n; ++i) alloc[i].assign(profile[i].size(), Rat(0));
    for (const auto& e : mech.order) {
        Rat x = 1;
        for (int j = 0; j < n; ++j)
            if (j != e.buyer) x *= 1 - blocked[j];
        alloc[e.buyer][e.block] = x;
        blocked[e.buyer] += profile[e.buyer].mass[e.block];
    }

    // Revenue as the sum over buyers of interim-allocation differences times
    // conditional value times the tail signal probability.
    Rat revenue = 0;
    for (int i = 0; i < n; ++i) {
        const auto& d = profile[i];
        Rat tail = 0;
        for (int b = 0; b < d.size(); ++b) tail += d.mass[b];
        for (int b = 0; b < d.size(); ++b) {
            Rat below = (b > 0) ? alloc[i][b - 1] : Rat(0);
            revenue += (alloc[i][b] - below) * d.support[b] * tail;
            tail -= d.mass[b];
        }
    }
    return revenue;
}

Rat eval_mechanism(std::span<const DiscreteDistribution> profile, const Mechanism& mech) {
    if (const auto* s = std::get_if<SequentialPostedPrice>(&mech.kind))
        return eval_sequential(profile, *s);
    return eval_permutation(profile, std::get<PermutationMechanism>(mech.kind));
}

PermutationMechanism descending_virtual_permutation(
    std::span<const DiscreteDistribution> profile) {
    struct Entry {
        Rat ironed;
        int buyer;
        int block;
    };
    std::vector<Entry> entries;
    for (int i = 0; i < static_cast<int>(profile.size()); ++i) {
        VirtualValueTable t = virtual_values(profile[i]);
        for (int b = 0; b < static_cast<int>(t.atoms.size()); ++b)
            if (t.atoms[b].ironed > 0) entries.push_back({t.atoms[b].ironed, i, b});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.ironed != b.ironed) return a.ironed > b.ironed;
        if (a.buyer != b.buyer) return a.buyer < b.buyer;
        return a.block > b.block;
    });
    PermutationMechanism mech;
    for (const auto& e : entries) mech.order.push_back({e.buyer, e.block});
    return mech;
}

}  // namespace optsig
