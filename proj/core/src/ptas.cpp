#include "optsig/ptas.hpp"

#include <algorithm>

namespace optsig {

Grid::Grid(Rat eps_) : eps(std::move(eps_)) {
    if (eps <= 0 || eps >= 1) throw InvalidEps("eps must lie in (0, 1)");
    z_max = rat_floor_i64(1 / (eps * eps));
}

std::int64_t Grid::snap_down(const Rat& v) const {
    if (v <= 0) return 0;
    return rat_floor_i64(v / eps);
}

Rat grid_mean(const GridDist& dist, const Grid& grid) {
    Rat mean = 0;
    for (const auto& [z, mass] : dist) mean += grid.value_of(z) * mass;
    return mean;
}

GridDist grid_max(const GridDist& a, const GridDist& b) {
    GridDist out;
    auto ia = a.begin();
    auto ib = b.begin();
    Rat cdf_a = 0, cdf_b = 0, prev = 0;
    while (ia != a.end() || ib != b.end()) {
        std::int64_t z;
        if (ib == b.end() || (ia != a.end() && ia->first <= ib->first)) z = ia->first;
        else z = ib->first;
        if (ia != a.end() && ia->first == z) cdf_a += (ia++)->second;
        if (ib != b.end() && ib->first == z) cdf_b += (ib++)->second;
        Rat joint = cdf_a * cdf_b;
        if (joint != prev) out[z] = joint - prev;
        prev = joint;
    }
    return out;
}

Rat virtual_welfare(const FeasiblePair& pair, const Grid& grid) {
    return grid_mean(pair.dist, grid) + pair.comp;
}

ValueQuantization quantize_values(const AtomList& atoms, const Grid& grid) {
    ValueQuantization out;
    const Rat cap = grid.cap();
    for (const auto& [v, mass] : atoms) {
        if (v > cap) {
            out.truncated_terms.push_back(v * mass);
            out.compensation_exact += v * mass;
            out.atoms.emplace_back(0, mass);  // truncated mass reassigned to 0
        } else {
            out.atoms.emplace_back(grid.snap_down(v), mass);
        }
    }
    return out;
}

GridDist quantize_masses(std::span<const std::pair<std::int64_t, Rat>> atoms,
                         const Grid& grid, int n, int m) {
    const Rat quantum = grid.eps * grid.eps * grid.eps * grid.eps / (n * m);
    GridDist out;
    out[0] = 1;
    for (const auto& [z, mass] : atoms) {
        if (z == 0) continue;  // residual bucket keeps full precision
        Rat kept = round_down_to_multiple(mass, quantum);
        if (kept == 0) continue;
        out[z] += kept;
        out[0] -= kept;
    }
    if (out[0] == 0) out.erase(0);
    return out;
}

FeasiblePair quantize_pair(const AtomList& atoms, const Grid& grid, int n, int m) {
    ValueQuantization vq = quantize_values(atoms, grid);
    FeasiblePair pair;
    pair.dist = quantize_masses(vq.atoms, grid, n, m);
    const Rat comp_quantum = grid.eps / (n * m);
    pair.comp = 0;
    for (const Rat& term : vq.truncated_terms)
        pair.comp += round_down_to_multiple(term, comp_quantum);
    if (pair.comp > 1) throw CompensationOverflow();
    return pair;
}

namespace {

// Mass quantum for one transition; shared by the DP and quantize_pair.
struct Quanta {
    Rat mass;  // eps^4 / (nm)
    Rat comp;  // eps / (nm)
};

Quanta make_quanta(const Grid& grid, int n, int m) {
    return {grid.eps * grid.eps * grid.eps * grid.eps / (n * m), grid.eps / (n * m)};
}

}  // namespace

MonotonePartition ImplementableSet::backtrack(const FeasiblePair& pair) const {
    auto it = pairs.find(pair);
    if (it == pairs.end()) throw std::invalid_argument("pair is not implementable");
    // The chain runs bottom-up: the complete state carries the lowest block,
    // each predecessor the one above, so blocks come out already ascending.
    std::vector<Block> blocks;
    const ImplementableKey* key = &it->second;
    while (true) {
        auto state = table.find(*key);
        if (state == table.end() || !state->second.back.has_value()) break;
        blocks.push_back({key->lo, key->lo_end});
        key = &*state->second.back;
    }
    MonotonePartition out;
    out.blocks = std::move(blocks);
    return out;
}

ImplementableSet implementable_pairs(const DiscreteDistribution& dist, int max_signals,
                                     const Grid& grid, int n, int m) {
    if (max_signals < 1) throw std::invalid_argument("need at least one signal");
    const int mi = dist.size();
    const Quanta quanta = make_quanta(grid, n, m);
    const Rat cap = grid.cap();

    // Prefix sums over the support for O(1) segment mass / mean queries.
    std::vector<Rat> pref_mass(mi + 1, Rat(0)), pref_weighted(mi + 1, Rat(0));
    for (int i = 0; i < mi; ++i) {
        pref_mass[i + 1] = pref_mass[i] + dist.mass[i];
        pref_weighted[i + 1] = pref_weighted[i] + dist.support[i] * dist.mass[i];
    }
    auto seg_mass = [&](int lo, int hi) -> Rat { return pref_mass[hi + 1] - pref_mass[lo]; };
    auto seg_mean = [&](int lo, int hi) -> Rat {
        return (pref_weighted[hi + 1] - pref_weighted[lo]) / seg_mass(lo, hi);
    };

    ImplementableSet set;
    ImplementableKey start;
    start.k_used = 0;
    start.lo = mi;  // sentinel: nothing covered yet
    start.lo_end = mi;
    start.pair.dist[0] = 1;
    start.pair.comp = 0;
    set.table[start] = {dist.support.back(), std::nullopt};

    // Grow segments downward; a state with lowest index `lo` only spawns
    // segments that end at lo - 1, so scanning new starts in decreasing
    // order visits every transition exactly once.
    for (int new_lo = mi - 1; new_lo >= 0; --new_lo) {
        // Snapshot: transitions at this level must not chain with each other.
        std::vector<std::pair<ImplementableKey, Rat>> sources;
        for (const auto& [key, value] : set.table)
            if (key.lo > new_lo && key.k_used < max_signals)
                sources.emplace_back(key, value.low_seg_virtual);

        for (const auto& [src, low_seg_virtual] : sources) {
            const int seg_hi = src.lo - 1;
            const Rat prob = seg_mass(new_lo, seg_hi);
            const Rat mean = seg_mean(new_lo, seg_hi);
            Rat vv = mean;
            if (src.lo < mi) {
                // Next atom up is the mean of the segment [src.lo, src.lo_end];
                // everything at or above src.lo lies strictly above this atom.
                vv -= (seg_mean(src.lo, src.lo_end) - mean) * seg_mass(src.lo, mi - 1) / prob;
            }
            // Regularity: the new (lower) atom's virtual value must not
            // exceed the one above it.
            if (vv > low_seg_virtual) continue;

            ImplementableKey next;
            next.k_used = src.k_used + 1;
            next.lo = new_lo;
            next.lo_end = seg_hi;
            next.pair = src.pair;
            if (vv > cap) {
                next.pair.comp += round_down_to_multiple(vv * prob, quanta.comp);
                if (next.pair.comp > 1) throw CompensationOverflow();
            } else {
                std::int64_t z = grid.snap_down(vv);
                if (z != 0) {
                    Rat kept = round_down_to_multiple(prob, quanta.mass);
                    if (kept != 0) {
                        next.pair.dist[z] += kept;
                        auto zero = next.pair.dist.find(0);
                        zero->second -= kept;
                        if (zero->second == 0) next.pair.dist.erase(zero);
                    }
                }
            }

            auto [it, inserted] = set.table.try_emplace(next);
            if (inserted || vv > it->second.low_seg_virtual) {
                // Keep the run achieving the largest lowest-segment virtual
                // value: it admits a superset of future extensions.
                it->second.low_seg_virtual = vv;
                it->second.back = src;
            }
            if (new_lo == 0) set.pairs.try_emplace(it->first.pair, it->first);
        }
    }
    return set;
}

std::vector<WelfareStage> virtual_welfare_dp(std::span<const ImplementableSet> sets,
                                             const Grid& grid, int n, int m) {
    if (sets.empty()) throw std::invalid_argument("no buyers");
    std::vector<WelfareStage> stages(sets.size());
    for (const auto& [pair, key] : sets[0].pairs)
        stages[0].try_emplace(pair, WelfareBack{std::nullopt, pair});

    for (std::size_t i = 1; i < sets.size(); ++i) {
        for (const auto& [prev_pair, back] : stages[i - 1]) {
            for (const auto& [pair, key] : sets[i].pairs) {
                GridDist running = grid_max(prev_pair.dist, pair.dist);
                std::vector<std::pair<std::int64_t, Rat>> atoms(running.begin(),
                                                                running.end());
                FeasiblePair next;
                next.dist = quantize_masses(atoms, grid, n, m);
                next.comp = prev_pair.comp + pair.comp;
                stages[i].try_emplace(std::move(next), WelfareBack{prev_pair, pair});
            }
        }
    }
    return stages;
}

PtasResult solve_ptas(const Instance& inst, int k, const Rat& eps) {
    validate(inst);
    if (k < 2) throw std::invalid_argument("need k >= 2");
    if (eps <= 0 || eps > Rat(1, 2)) throw InvalidEps("eps must lie in (0, 1/2]");

    auto [scaled, scale] = normalize(inst);
    const int n = scaled.buyer_count();
    const int m = scaled.max_support_size();
    Grid grid(eps);

    std::vector<ImplementableSet> sets;
    sets.reserve(n);
    for (const auto& buyer : scaled.buyers)
        sets.push_back(implementable_pairs(buyer, k, grid, n, m));

    std::vector<WelfareStage> stages = virtual_welfare_dp(sets, grid, n, m);

    // Best final state; map order makes the tie-break the lexicographically
    // smallest state.
    const WelfareStage& last = stages.back();
    auto best = last.end();
    Rat best_vw;
    for (auto it = last.begin(); it != last.end(); ++it) {
        Rat vw = virtual_welfare(it->first, grid);
        if (best == last.end() || vw > best_vw) {
            best = it;
            best_vw = vw;
        }
    }
    if (best == last.end()) throw Error("welfare dp produced no reachable state");

    // Walk stages backwards collecting each buyer's implementable pair.
    std::vector<FeasiblePair> chosen(n);
    auto cursor = best;
    for (int i = n - 1; i >= 0; --i) {
        chosen[i] = cursor->second.chosen;
        if (i > 0) cursor = stages[i - 1].find(*cursor->second.prev);
    }

    PtasResult res;
    for (int i = 0; i < n; ++i)
        res.profile.partitions.push_back(sets[i].backtrack(chosen[i]));

    // Price the constructed design exactly on the original scale.
    std::vector<DiscreteDistribution> posteriors = induce_posteriors(inst, res.profile);
    res.revenue = optimal_revenue(posteriors);
    res.mechanism.kind = descending_virtual_permutation(posteriors);
    res.vw_certificate = best_vw * scale;
    return res;
}

}  // namespace optsig
