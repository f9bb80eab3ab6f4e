#include <benchmark/benchmark.h>

#include <random>

#include "optsig/approx.hpp"
#include "optsig/exact.hpp"
#include "optsig/ptas.hpp"
#include "optsig/random_instance.hpp"

using namespace optsig;

namespace {

Instance make_instance(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RandomInstanceParams params;
    params.min_buyers = params.max_buyers = n;
    params.min_support = params.max_support = m;
    return random_instance(rng, params);
}

void BM_OptimalRevenue(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_revenue(inst.buyers));
}
BENCHMARK(BM_OptimalRevenue)->Args({2, 3})->Args({4, 5})->Args({6, 8});

void BM_SolveApprox(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)), 12);
    for (auto _ : state) benchmark::DoNotOptimize(solve_approx(inst).revenue);
}
BENCHMARK(BM_SolveApprox)->Args({3, 4})->Args({5, 5})->Args({8, 8});

void BM_SolveExact(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)), 13);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_exact(inst, inst.max_support_size()).revenue);
}
BENCHMARK(BM_SolveExact)->Args({2, 3})->Args({3, 4})->Args({3, 5});

void BM_SolvePtas(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)), 14);
    Rat eps(1, state.range(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_ptas(inst, inst.max_support_size(), eps).revenue);
}
BENCHMARK(BM_SolvePtas)->Args({2, 3, 8})->Args({3, 4, 12})->Args({3, 4, 20});

}  // namespace

BENCHMARK_MAIN();
