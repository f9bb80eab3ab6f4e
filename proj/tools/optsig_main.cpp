// optsig command line: solve instances, generate benchmark families,
// evaluate user-supplied designs.
//
// Exit codes: 0 success, 2 parse/validation/parameter error,
// 3 search space guard tripped.
#include <chrono>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "optsig/approx.hpp"
#include "optsig/exact.hpp"
#include "optsig/hardgen.hpp"
#include "optsig/io.hpp"
#include "optsig/ptas.hpp"
#include "optsig/random_instance.hpp"

using nlohmann::json;
using namespace optsig;

namespace {

json rat_record(const Rat& x) {
    return {{"exact", rat_str(x)}, {"decimal", rat_decimal(x)}};
}

bool all_regular(const std::vector<DiscreteDistribution>& posteriors) {
    for (const auto& p : posteriors)
        if (!is_regular(virtual_values(p))) return false;
    return true;
}

int run_solve(const std::string& file, const std::string& solver, int k,
              const std::string& eps_text, const std::string& out,
              std::int64_t max_profiles, int threads) {
    Instance inst = load_instance(file);
    const int m = inst.max_support_size();
    if (k <= 0) k = m;

    json result;
    result["solver"] = solver;
    result["k"] = k;
    Rat revenue, welfare = optimal_welfare(inst);

    auto start = std::chrono::steady_clock::now();
    if (solver == "exact" || solver == "support2") {
        ExactResult res;
        if (solver == "exact") {
            ExactOptions opts;
            opts.max_profiles = max_profiles;
            opts.threads = threads;
            res = solve_exact(inst, k, opts);
        } else {
            res = solve_support2(inst);
        }
        revenue = res.revenue;
        result["partitions"] = partitions_to_json(res.profile);
        auto posteriors = induce_posteriors(inst, res.profile);
        if (all_regular(posteriors)) {
            Mechanism mech{descending_virtual_permutation(posteriors)};
            result["mechanism"] = mechanism_to_json(mech);
        } else {
            // No permutation mechanism is optimal here; the optimal auction
            // irons the posteriors.
            result["mechanism"] = {{"type", "myerson"}};
        }
    } else if (solver == "ptas") {
        if (eps_text.empty()) {
            std::cerr << "error: --eps is required for the ptas solver\n";
            return 2;
        }
        PtasResult res = solve_ptas(inst, k, rat_parse(eps_text));
        revenue = res.revenue;
        result["eps"] = eps_text;
        result["partitions"] = partitions_to_json(res.profile);
        result["mechanism"] = mechanism_to_json(res.mechanism);
        result["vw_certificate"] = rat_record(res.vw_certificate);
    } else if (solver == "approx") {
        ApproxResult res = solve_approx(inst);
        revenue = res.revenue;
        json cuts = json::array();
        for (const auto& c : res.profile.cuts)
            cuts.push_back({{"q", rat_str(c.q)},
                            {"threshold_index", c.cut_index},
                            {"mix_high", rat_str(c.d)},
                            {"high_mean", rat_str(c.b)}});
        result["binary_signals"] = cuts;
        // Blocks refer to the binary signal space (1 = high), not posterior atoms.
        json steps = json::array();
        for (const auto& st : res.schedule.schedule)
            steps.push_back({{"buyer", st.buyer}, {"price", rat_str(st.price)}});
        result["mechanism"] = {{"type", "sequential"}, {"schedule", steps}};
    } else {
        std::cerr << "error: unknown solver \"" << solver << "\"\n";
        return 2;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    result["revenue"] = rat_record(revenue);
    result["welfare"] = rat_record(welfare);
    result["wall_time_ms"] = static_cast<double>(elapsed) / 1000.0;

    if (!out.empty()) save_json(out, result);
    std::cout << "solver   " << solver << "\n"
              << "revenue  " << rat_str(revenue) << " (" << rat_decimal(revenue) << ")\n"
              << "welfare  " << rat_str(welfare) << " (" << rat_decimal(welfare) << ")\n"
              << "time     " << result["wall_time_ms"] << " ms\n";
    return 0;
}

int run_gen(const std::string& kind, const std::vector<long>& c, const std::vector<long>& a,
            long b_param, int rand_n, int rand_m, long rand_maxval, std::uint64_t seed,
            const std::string& out) {
    json instance;
    json checks;
    if (kind == "partition") {
        PartitionReduction red = make_partition_reduction(c);
        instance = instance_to_json(red.instance);
        json per_buyer = json::array();
        for (std::size_t i = 0; i < red.c.size(); ++i)
            per_buyer.push_back({{"t", rat_str(red.t[i])},
                                 {"r", rat_str(red.r[i])},
                                 {"q", rat_str(red.q[i])},
                                 {"pooled_virtual_value",
                                  rat_str(pooled_virtual_value(red, static_cast<int>(i)))}});
        checks = {{"kind", "partition"}, {"M", red.big_m.get_str()}, {"buyers", per_buyer}};
    } else if (kind == "subsetproduct") {
        SubsetProductReduction red = make_subset_product_reduction(a, b_param);
        instance = instance_to_json(red.instance);
        json lows = json::array();
        for (std::size_t i = 0; i < red.a.size(); ++i)
            lows.push_back(rat_str(pooled_low_virtual_value(red, static_cast<int>(i))));
        std::vector<bool> none(red.a.size(), false), all(red.a.size(), true);
        checks = {{"kind", "subsetproduct"},
                  {"high_virtual_value", rat_str(pooled_high_virtual_value(red))},
                  {"low_virtual_values", lows},
                  {"revenue_all_disclosed", rat_str(closed_form_revenue(red, none))},
                  {"revenue_all_pooled", rat_str(closed_form_revenue(red, all))}};
    } else if (kind == "random") {
        std::mt19937_64 rng(seed);
        RandomInstanceParams params;
        params.min_buyers = params.max_buyers = rand_n;
        params.min_support = 1;
        params.max_support = rand_m;
        params.max_value = rand_maxval;
        instance = instance_to_json(random_instance(rng, params));
        checks = {{"kind", "random"}, {"seed", seed}};
    } else {
        std::cerr << "error: unknown kind \"" << kind << "\"\n";
        return 2;
    }
    std::string path = out.empty() ? "instance.json" : out;
    save_json(path, instance);
    save_json(path + ".checks.json", checks);
    std::cout << "wrote " << path << " and " << path << ".checks.json\n";
    return 0;
}

int run_eval(const std::string& instance_file, const std::string& design_file) {
    Instance inst = load_instance(instance_file);
    DesignFile design = design_from_json(load_json(design_file));
    if (static_cast<int>(design.profile.partitions.size()) != inst.buyer_count())
        throw ParseError("design has " + std::to_string(design.profile.partitions.size()) +
                         " partitions for " + std::to_string(inst.buyer_count()) + " buyers");
    auto posteriors = induce_posteriors(inst, design.profile);
    Rat revenue = eval_mechanism(posteriors, design.mechanism);
    std::cout << rat_str(revenue) << " (" << rat_decimal(revenue) << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Revenue-optimal signal structures and auctions for discrete value "
                 "distributions"};
    app.require_subcommand(1);

    // solve
    std::string file, solver = "exact", eps_text, out;
    int k = 0;
    std::int64_t max_profiles = 10'000'000;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("file", file, "Instance JSON file")->required();
    solve->add_option("--solver", solver, "exact | ptas | approx | support2");
    solve->add_option("--k", k, "Signal budget per buyer (default: support size)");
    solve->add_option("--eps", eps_text, "Accuracy parameter, rational (ptas only)");
    solve->add_option("--out", out, "Write the result record to this file");
    solve->add_option("--max-profiles", max_profiles, "Exact-search guard");
    solve->add_option("--threads", threads, "Worker threads for the exact solver");

    // gen
    std::string kind = "partition", gen_out;
    std::vector<long> c, a;
    long b_param = 0, rand_maxval = 10;
    int rand_n = 2, rand_m = 3;
    std::uint64_t seed = 1;
    auto* gen = app.add_subcommand("gen", "Generate a benchmark instance");
    gen->add_option("--kind", kind, "partition | subsetproduct | random")->required();
    gen->add_option("--c", c, "Partition weights (comma separated)")->delimiter(',');
    gen->add_option("--a", a, "Subset-product factors (comma separated)")->delimiter(',');
    gen->add_option("--B", b_param, "Subset-product target");
    gen->add_option("--n", rand_n, "Random: number of buyers");
    gen->add_option("--m", rand_m, "Random: max support size");
    gen->add_option("--max-value", rand_maxval, "Random: max support value");
    gen->add_option("--seed", seed, "Random: RNG seed");
    gen->add_option("--out", gen_out, "Output instance file");

    // eval
    std::string eval_instance, eval_design;
    auto* eval = app.add_subcommand("eval", "Evaluate a design against an instance");
    eval->add_option("instance", eval_instance, "Instance JSON file")->required();
    eval->add_option("design", eval_design, "Design JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed())
            return run_solve(file, solver, k, eps_text, out, max_profiles, threads);
        if (gen->parsed())
            return run_gen(kind, c, a, b_param, rand_n, rand_m, rand_maxval, seed, gen_out);
        if (eval->parsed()) return run_eval(eval_instance, eval_design);
    } catch (const SearchSpaceTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
