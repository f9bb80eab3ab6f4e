#include <set>

#include "doctest.h"
#include "optsig/exact.hpp"
#include "optsig/ptas.hpp"
#include "test_util.hpp"

using namespace optsig;
using namespace optsig::testutil;

namespace {

// Oracle: the implementable set by definition — enumerate every monotone
// partition, keep the ones inducing a regular posterior, quantize their
// virtual-value atoms.
std::set<FeasiblePair> pairs_by_bruteforce(const DiscreteDistribution& d, int k,
                                           const Grid& grid, int n, int m) {
    std::set<FeasiblePair> out;
    for (const auto& part : enumerate_partitions(d.size(), k)) {
        DiscreteDistribution post = induce_posterior(d, part);
        VirtualValueTable table = virtual_values(post);
        if (!is_regular(table)) continue;
        AtomList atoms;
        for (const auto& a : table.atoms) atoms.emplace_back(a.virtual_value, a.mass);
        out.insert(quantize_pair(atoms, grid, n, m));
    }
    return out;
}

AtomList virtual_atoms_of(const DiscreteDistribution& post) {
    AtomList atoms;
    for (const auto& a : virtual_values(post).atoms)
        atoms.emplace_back(a.virtual_value, a.mass);
    return atoms;
}

DiscreteDistribution grid_to_distribution(const GridDist& g, const Grid& grid) {
    std::vector<std::pair<Rat, Rat>> atoms;
    for (const auto& [z, mass] : g) atoms.emplace_back(grid.value_of(z), mass);
    return distribution_from_atoms(std::move(atoms));
}

// Random non-negative virtual-value atoms; values up to ~2.5/eps so the
// compensation path is exercised, then rescaled to keep E[max] <= 1.
struct RandomProfile {
    std::vector<AtomList> atom_lists;
    std::vector<DiscreteDistribution> dists;  // merged view for expectations
};

RandomProfile random_vw_profile(std::mt19937_64& rng, int max_n, int max_m,
                                const Rat& eps) {
    RandomProfile out;
    int n = 1 + static_cast<int>(rng() % max_n);
    long value_cap = rat_floor_i64(Rat(5, 2) / eps);
    for (int i = 0; i < n; ++i) {
        int atoms = 1 + static_cast<int>(rng() % max_m);
        std::vector<long> weights(atoms);
        long total = 0;
        for (auto& w : weights) total += (w = 1 + static_cast<long>(rng() % 9));
        AtomList list;
        for (int a = 0; a < atoms; ++a) {
            Rat value(static_cast<long>(rng() % (value_cap + 1)),
                      1 + static_cast<long>(rng() % 3));
            value.canonicalize();
            Rat mass(weights[a], total);
            mass.canonicalize();
            list.emplace_back(value, mass);
        }
        out.atom_lists.push_back(std::move(list));
    }
    // Rescale so the virtual welfare is at most 1.
    std::vector<DiscreteDistribution> dists;
    for (const auto& list : out.atom_lists) dists.push_back(distribution_from_atoms(list));
    Rat vw = expected_max(dists);
    if (vw > 1)
        for (auto& list : out.atom_lists)
            for (auto& [v, f] : list) v /= vw;
    for (auto& list : out.atom_lists) out.dists.push_back(distribution_from_atoms(list));
    return out;
}

}  // namespace

TEST_CASE("grid geometry") {
    Grid g(rat(1, 2));
    CHECK(g.z_max == 4);  // points 0, 1/2, 1, 3/2, 2
    CHECK(g.cap() == 2);
    CHECK(g.snap_down(rat(7, 10)) == 1);
    CHECK(g.snap_down(rat(-3)) == 0);
    CHECK(g.snap_down(rat(2)) == 4);

    Grid fine(rat(1, 20));
    CHECK(fine.z_max == 400);
    CHECK_THROWS_AS(Grid(rat(3, 2)), InvalidEps);
}

TEST_CASE("value quantization") {
    Grid g(rat(1, 2));
    SUBCASE("on-grid value below the cap is a fixpoint") {
        auto vq = quantize_values({{rat(3, 2), rat(1)}}, g);
        CHECK(vq.atoms == std::vector<std::pair<std::int64_t, Rat>>{{3, rat(1)}});
        CHECK(vq.compensation_exact == 0);
    }
    SUBCASE("value above the cap is truncated into the compensation") {
        auto vq = quantize_values({{rat(5), rat(1)}}, g);
        CHECK(vq.atoms == std::vector<std::pair<std::int64_t, Rat>>{{0, rat(1)}});
        CHECK(vq.compensation_exact == 5);
    }
    SUBCASE("off-grid value rounds down") {
        auto vq = quantize_values({{rat(7, 10), rat(1)}}, g);
        CHECK(vq.atoms == std::vector<std::pair<std::int64_t, Rat>>{{1, rat(1)}});
    }
}

TEST_CASE("mass quantization") {
    Grid g(rat(1, 2));
    SUBCASE("multiples are unchanged") {
        // n = m = 2: quantum 1/64.
        std::vector<std::pair<std::int64_t, Rat>> atoms{{1, rat(1, 4)}, {0, rat(3, 4)}};
        auto out = quantize_masses(atoms, g, 2, 2);
        CHECK(out == GridDist{{0, rat(3, 4)}, {1, rat(1, 4)}});
    }
    SUBCASE("unit atom is unchanged") {
        std::vector<std::pair<std::int64_t, Rat>> atoms{{3, rat(1)}};
        auto out = quantize_masses(atoms, g, 1, 1);
        CHECK(out == GridDist{{3, rat(1)}});
    }
    SUBCASE("rounding deficit lands on zero") {
        // n = m = 1: quantum 1/16; floor(0.9 * 16) = 14.
        std::vector<std::pair<std::int64_t, Rat>> atoms{{1, rat(9, 10)}, {0, rat(1, 10)}};
        auto out = quantize_masses(atoms, g, 1, 1);
        CHECK(out == GridDist{{0, rat(1, 8)}, {1, rat(7, 8)}});
    }
    SUBCASE("atoms sharing a grid point are rounded separately") {
        std::vector<std::pair<std::int64_t, Rat>> atoms{
            {1, rat(9, 10)}, {1, rat(3, 100)}, {0, rat(7, 100)}};
        auto out = quantize_masses(atoms, g, 1, 1);
        // floor(0.9*16)=14, floor(0.03*16)=0: the small atom is lost entirely.
        CHECK(out[1] == rat(7, 8));
    }
}

TEST_CASE("joint quantization") {
    Grid g(rat(1, 2));
    SUBCASE("composition of the value and mass steps") {
        auto pair = quantize_pair({{rat(3, 2), rat(1)}}, g, 1, 1);
        CHECK(pair.dist == GridDist{{3, rat(1)}});
        CHECK(pair.comp == 0);
    }
    SUBCASE("compensation is rounded down per source atom") {
        // eps/(nm) = 1/8 at n=4, m=1; two atoms above the cap.
        auto pair = quantize_pair(
            {{rat(5, 2), rat(1, 5)}, {rat(21, 8), rat(1, 5)}, {rat(0), rat(3, 5)}},
            g, 4, 1);
        // terms: 1/2 -> 1/2 (multiple of 1/8), 21/40 -> floor(21/40*8)/8 = 4/8.
        CHECK(pair.comp == rat(1));
        CHECK(pair.dist == GridDist{{0, rat(1)}});
    }
    SUBCASE("overflow is rejected") {
        CHECK_THROWS_AS(quantize_pair({{rat(5), rat(1)}}, g, 1, 1), CompensationOverflow);
    }
}

TEST_CASE("grid max matches a direct product computation") {
    Grid g(rat(1, 2));
    SUBCASE("point masses") {
        GridDist a{{2, rat(1)}}, b{{3, rat(1)}};
        CHECK(grid_max(a, b) == GridDist{{3, rat(1)}});
    }
    SUBCASE("documented two-point example") {
        GridDist a{{0, rat(1, 2)}, {1, rat(1, 2)}};
        auto out = grid_max(a, a);
        CHECK(out == GridDist{{0, rat(1, 4)}, {1, rat(3, 4)}});
        // Already on the 1/64 quantum at n = m = 2.
        std::vector<std::pair<std::int64_t, Rat>> atoms(out.begin(), out.end());
        CHECK(quantize_masses(atoms, g, 2, 2) == out);
    }
    SUBCASE("random grid distributions vs brute force") {
        std::mt19937_64 rng(61);
        for (int t = 0; t < 50; ++t) {
            auto make = [&] {
                GridDist d;
                Rat left = 1;
                int points = 1 + static_cast<int>(rng() % 3);
                for (int i = 0; i < points - 1; ++i) {
                    Rat part(1 + static_cast<long>(rng() % 4), 8);
                    part.canonicalize();
                    if (part > left) part = left;
                    if (part == 0) continue;
                    d[static_cast<std::int64_t>(rng() % 5)] += part;
                    left -= part;
                }
                d[static_cast<std::int64_t>(rng() % 5)] += left;
                return d;
            };
            GridDist a = make(), b = make();
            auto out = grid_max(a, b);
            Rat total = 0;
            for (const auto& [z, mass] : out) total += mass;
            CHECK(total == 1);
            CHECK(grid_to_distribution(out, g).mean() ==
                  expected_max_bruteforce({grid_to_distribution(a, g),
                                           grid_to_distribution(b, g)}));
        }
    }
}

TEST_CASE("implementable pairs on the documented cases") {
    SUBCASE("point-mass buyer has exactly one pair") {
        Grid g(rat(1, 2));
        auto set = implementable_pairs(point_mass(rat(1)), 2, g, 1, 1);
        CHECK(set.pairs.size() == 1);
        auto part = set.backtrack(set.pairs.begin()->first);
        CHECK(part == coarsest_partition(1));
    }
    SUBCASE("normalized golden buyer at eps=1/4") {
        DiscreteDistribution d;
        d.support = {rat(0), rat(9, 13), rat(18, 13)};
        d.mass = {rat(1, 3), rat(1, 3), rat(1, 3)};
        Grid g(rat(1, 4));
        auto set = implementable_pairs(d, 3, g, 2, 3);
        auto brute = pairs_by_bruteforce(d, 3, g, 2, 3);
        CHECK(set.pairs.size() == brute.size());
        CHECK(brute.size() == 3);  // full disclosure collides with the top split
        for (const auto& [pair, key] : set.pairs) CHECK(brute.count(pair) == 1);
    }
    SUBCASE("k=1 leaves only the pooled pair") {
        Grid g(rat(1, 4));
        DiscreteDistribution d = uniform012();
        auto set = implementable_pairs(d, 1, g, 1, 3);
        CHECK(set.pairs.size() == 1);
        auto part = set.backtrack(set.pairs.begin()->first);
        CHECK(part == coarsest_partition(3));
    }
}

TEST_CASE("implementable pairs match brute force and round-trip") {
    std::mt19937_64 rng(62);
    const Rat epses[] = {rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)};
    for (int t = 0; t < 50; ++t) {
        // Normalized single-buyer context: welfare = mean = 1.
        DiscreteDistribution d = random_distribution(rng, 1, 5, 10);
        if (d.mean() == 0) continue;
        Instance norm = normalize(Instance{{d}}).first;
        d = norm.buyers[0];
        int m = d.size();
        int k = 2 + static_cast<int>(rng() % 4);
        Grid g(epses[rng() % 4]);

        auto set = implementable_pairs(d, k, g, 1, m);
        auto brute = pairs_by_bruteforce(d, k, g, 1, m);

        std::set<FeasiblePair> produced;
        for (const auto& [pair, key] : set.pairs) produced.insert(pair);
        CHECK(produced == brute);

        for (const auto& [pair, key] : set.pairs) {
            MonotonePartition part = set.backtrack(pair);
            CHECK_NOTHROW(check_partition(part, m));
            CHECK(signal_count(part) <= k);
            DiscreteDistribution post = induce_posterior(d, part);
            CHECK(is_regular(virtual_values(post)));
            CHECK(quantize_pair(virtual_atoms_of(post), g, 1, m) == pair);
        }
    }
}

TEST_CASE("virtual welfare dp stages") {
    Grid g(rat(1, 4));
    DiscreteDistribution d;
    d.support = {rat(0), rat(9, 13), rat(18, 13)};
    d.mass = {rat(1, 3), rat(1, 3), rat(1, 3)};

    SUBCASE("single buyer: stage zero is the implementable set itself") {
        auto set = implementable_pairs(d, 3, g, 1, 3);
        std::vector<ImplementableSet> sets{set};
        auto stages = virtual_welfare_dp(sets, g, 1, 3);
        REQUIRE(stages.size() == 1);
        CHECK(stages[0].size() == set.pairs.size());
        for (const auto& [pair, back] : stages[0]) CHECK(set.pairs.count(pair) == 1);
    }
    SUBCASE("two buyers: states combine pairs through the running max") {
        auto set = implementable_pairs(d, 3, g, 2, 3);
        std::vector<ImplementableSet> sets{set, set};
        auto stages = virtual_welfare_dp(sets, g, 2, 3);
        REQUIRE(stages.size() == 2);
        CHECK(!stages[1].empty());
        for (const auto& [pair, back] : stages[1]) {
            REQUIRE(back.prev.has_value());
            GridDist expect = grid_max(back.prev->dist, back.chosen.dist);
            std::vector<std::pair<std::int64_t, Rat>> atoms(expect.begin(), expect.end());
            CHECK(pair.dist == quantize_masses(atoms, g, 2, 3));
            CHECK(pair.comp == back.prev->comp + back.chosen.comp);
        }
    }
}

TEST_CASE("solve_ptas recovers the golden optimum") {
    auto res2 = solve_ptas(golden_instance(), 2, rat(1, 20));
    CHECK(res2.revenue == rat(4, 3));
    auto res3 = solve_ptas(golden_instance(), 3, rat(1, 20));
    CHECK(res3.revenue == rat(4, 3));
    // The emitted mechanism prices the designed posteriors optimally.
    auto posteriors = induce_posteriors(golden_instance(), res3.profile);
    CHECK(eval_mechanism(posteriors, res3.mechanism) == rat(4, 3));
}

TEST_CASE("solve_ptas degenerate and error cases") {
    CHECK(solve_ptas(Instance{{point_mass(rat(5))}}, 2, rat(1, 4)).revenue == 5);
    CHECK_THROWS_AS(solve_ptas(golden_instance(), 2, rat(2, 3)), InvalidEps);
    CHECK_THROWS_AS(solve_ptas(golden_instance(), 2, rat(0)), InvalidEps);
    CHECK_THROWS_AS(solve_ptas(golden_instance(), 1, rat(1, 4)), std::invalid_argument);
}

TEST_CASE("solve_ptas stays within the additive loss budget of the exact optimum") {
    std::mt19937_64 rng(63);
    RandomInstanceParams params;
    params.max_buyers = 2;
    params.max_support = 3;
    const Rat eps = rat(1, 20);
    for (int t = 0; t < 15; ++t) {
        Instance raw = random_instance(rng, params);
        if (optimal_welfare(raw) == 0) continue;
        Instance inst = normalize(raw).first;
        int m = inst.max_support_size();
        int k = std::max(2, m);
        auto ptas = solve_ptas(inst, k, eps);
        auto exact = solve_exact(inst, k);
        CHECK(ptas.revenue <= exact.revenue);
        CHECK(ptas.revenue >= exact.revenue - 12 * eps);
        // The design is genuine: partitions are valid and regular.
        for (std::size_t i = 0; i < inst.buyers.size(); ++i) {
            CHECK_NOTHROW(check_partition(ptas.profile.partitions[i],
                                          inst.buyers[i].size()));
            CHECK(is_regular(virtual_values(
                induce_posterior(inst.buyers[i], ptas.profile.partitions[i]))));
        }
    }
}

TEST_CASE("lemma: quantization moves the virtual welfare by at most 5 eps") {
    std::mt19937_64 rng(64);
    const Rat epses[] = {rat(1, 2), rat(1, 3), rat(1, 4)};
    for (int t = 0; t < 1000; ++t) {
        const Rat& eps = epses[t % 3];
        Grid g(eps);
        int max_m = 4;
        auto profile = random_vw_profile(rng, 3, max_m, eps);
        int n = static_cast<int>(profile.atom_lists.size());

        Rat vw_before = expected_max(profile.dists);
        REQUIRE(vw_before <= 1);

        std::vector<DiscreteDistribution> quantized;
        Rat comp_total = 0;
        for (const auto& list : profile.atom_lists) {
            FeasiblePair pair = quantize_pair(list, g, n, max_m);
            quantized.push_back(grid_to_distribution(pair.dist, g));
            comp_total += pair.comp;
        }
        Rat vw_after = expected_max(quantized) + comp_total;

        Rat diff = vw_after - vw_before;
        if (diff < 0) diff = -diff;
        CHECK(diff <= 5 * eps);
    }
}

TEST_CASE("lemma: mass quantization loses at most 2 eps / n on the expected max") {
    std::mt19937_64 rng(65);
    for (int t = 0; t < 1000; ++t) {
        const Rat eps = (t % 2 == 0) ? rat(1, 2) : rat(1, 3);
        Grid g(eps);
        int n = 1 + static_cast<int>(rng() % 4);
        int m = 1 + static_cast<int>(rng() % 4);
        auto make = [&] {
            GridDist d;
            Rat left = 1;
            int points = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < points - 1; ++i) {
                Rat part(1 + static_cast<long>(rng() % 7), 97);
                part.canonicalize();
                if (part > left) part = left;
                d[static_cast<std::int64_t>(rng() % (g.z_max + 1))] += part;
                left -= part;
                if (left == 0) break;
            }
            if (left > 0) d[static_cast<std::int64_t>(rng() % (g.z_max + 1))] += left;
            return d;
        };
        GridDist a = make(), b = make();
        auto quantize = [&](const GridDist& d) {
            std::vector<std::pair<std::int64_t, Rat>> atoms(d.begin(), d.end());
            return quantize_masses(atoms, g, n, m);
        };
        Rat before = grid_to_distribution(grid_max(a, b), g).mean();
        Rat after = grid_to_distribution(grid_max(quantize(a), quantize(b)), g).mean();
        CHECK(after <= before);
        CHECK(after >= before - 2 * eps / n);
    }
}

TEST_CASE("lemma: truncation into the compensation costs at most 2 eps") {
    std::mt19937_64 rng(66);
    const Rat epses[] = {rat(1, 2), rat(1, 3), rat(1, 4)};
    for (int t = 0; t < 1000; ++t) {
        const Rat& eps = epses[t % 3];
        auto profile = random_vw_profile(rng, 3, 4, eps);
        Rat cap = 1 / eps;

        Rat vw_before = expected_max(profile.dists);
        REQUIRE(vw_before <= 1);

        // Truncation only, no rounding: values above the cap move to 0 and
        // their mean contribution is kept exactly.
        std::vector<DiscreteDistribution> truncated;
        Rat comp = 0;
        for (const auto& list : profile.atom_lists) {
            std::vector<std::pair<Rat, Rat>> atoms;
            for (const auto& [v, f] : list) {
                if (v > cap) {
                    comp += v * f;
                    atoms.emplace_back(Rat(0), f);
                } else {
                    atoms.emplace_back(v, f);
                }
            }
            truncated.push_back(distribution_from_atoms(std::move(atoms)));
        }
        Rat vw_after = expected_max(truncated) + comp;
        CHECK(vw_after >= vw_before);
        CHECK(vw_after <= vw_before + 2 * eps);
    }
}
