#include "optsig/instance.hpp"

#include <algorithm>

namespace optsig {

std::string to_string(ValidationKind kind) {
    switch (kind) {
        case ValidationKind::EmptyInstance: return "EmptyInstance";
        case ValidationKind::NegativeValue: return "NegativeValue";
        case ValidationKind::UnsortedSupport: return "UnsortedSupport";
        case ValidationKind::NonPositiveMass: return "NonPositiveMass";
        case ValidationKind::MassNotOne: return "MassNotOne";
        case ValidationKind::LengthMismatch: return "LengthMismatch";
    }
    return "Unknown";
}

ValidationError::ValidationError(ValidationKind kind, int buyer)
    : Error(to_string(kind) +
            (buyer >= 0 ? " (buyer " + std::to_string(buyer) + ")" : std::string())),
      kind(kind),
      buyer(buyer) {}

Rat DiscreteDistribution::mean() const {
    Rat m = 0;
    for (int i = 0; i < size(); ++i) m += support[i] * mass[i];
    return m;
}

DiscreteDistribution distribution_from_atoms(std::vector<std::pair<Rat, Rat>> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    DiscreteDistribution d;
    for (auto& [v, f] : atoms) {
        if (f == 0) continue;
        if (!d.support.empty() && d.support.back() == v) {
            d.mass.back() += f;
        } else {
            d.support.push_back(v);
            d.mass.push_back(f);
        }
    }
    return d;
}

int Instance::max_support_size() const {
    int m = 0;
    for (const auto& b : buyers) m = std::max(m, b.size());
    return m;
}

void validate(const Instance& inst) {
    if (inst.buyers.empty()) throw ValidationError(ValidationKind::EmptyInstance, -1);
    for (int i = 0; i < inst.buyer_count(); ++i) {
        const auto& b = inst.buyers[i];
        if (b.support.empty()) throw ValidationError(ValidationKind::EmptyInstance, i);
        if (b.support.size() != b.mass.size())
            throw ValidationError(ValidationKind::LengthMismatch, i);
        Rat total = 0;
        for (int j = 0; j < b.size(); ++j) {
            if (b.support[j] < 0) throw ValidationError(ValidationKind::NegativeValue, i);
            if (j > 0 && !(b.support[j - 1] < b.support[j]))
                throw ValidationError(ValidationKind::UnsortedSupport, i);
            if (b.mass[j] <= 0) throw ValidationError(ValidationKind::NonPositiveMass, i);
            total += b.mass[j];
        }
        if (total != 1) throw ValidationError(ValidationKind::MassNotOne, i);
    }
}

Rat expected_max(std::span<const DiscreteDistribution> dists) {
    // Merged support grid.
    std::vector<Rat> grid;
    for (const auto& d : dists) grid.insert(grid.end(), d.support.begin(), d.support.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Two-pointer walk: cdf[i] tracks F_i at the current grid point.
    std::vector<int> pos(dists.size(), 0);
    std::vector<Rat> cdf(dists.size(), Rat(0));
    Rat result = 0;
    Rat prev_prod = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        Rat prod = 1;
        for (std::size_t i = 0; i < dists.size(); ++i) {
            const auto& d = dists[i];
            while (pos[i] < d.size() && d.support[pos[i]] <= grid[g]) {
                cdf[i] += d.mass[pos[i]];
                ++pos[i];
            }
            prod *= cdf[i];
        }
        result += grid[g] * (prod - prev_prod);
        prev_prod = prod;
    }
    return result;
}

Rat optimal_welfare(const Instance& inst) {
    validate(inst);
    return expected_max(inst.buyers);
}

std::pair<Instance, Rat> normalize(const Instance& inst) {
    Rat scale = optimal_welfare(inst);
    if (scale == 0) throw ZeroWelfare();
    Instance out = inst;
    for (auto& b : out.buyers)
        for (auto& v : b.support) v /= scale;
    return {std::move(out), scale};
}

}  // namespace optsig
