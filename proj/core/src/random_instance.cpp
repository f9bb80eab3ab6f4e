#include "optsig/random_instance.hpp"

#include <algorithm>
#include <numeric>

namespace optsig {

DiscreteDistribution random_distribution(std::mt19937_64& rng, int min_support,
                                         int max_support, long max_value,
                                         long max_weight) {
    std::uniform_int_distribution<int> size_dist(min_support, max_support);
    int m = size_dist(rng);
    m = std::min<long>(m, max_value + 1);  // need m distinct values in [0, max_value]

    std::vector<long> values(max_value + 1);
    std::iota(values.begin(), values.end(), 0);
    std::shuffle(values.begin(), values.end(), rng);
    values.resize(m);
    std::sort(values.begin(), values.end());

    std::uniform_int_distribution<long> weight_dist(1, max_weight);
    std::vector<long> weights(m);
    long total = 0;
    for (auto& w : weights) total += (w = weight_dist(rng));

    DiscreteDistribution d;
    for (int i = 0; i < m; ++i) {
        d.support.push_back(Rat(values[i]));
        Rat mass(weights[i], total);
        mass.canonicalize();
        d.mass.push_back(mass);
    }
    return d;
}

Instance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params) {
    std::uniform_int_distribution<int> n_dist(params.min_buyers, params.max_buyers);
    Instance inst;
    int n = n_dist(rng);
    for (int i = 0; i < n; ++i)
        inst.buyers.push_back(random_distribution(rng, params.min_support,
                                                  params.max_support, params.max_value,
                                                  params.max_weight));
    return inst;
}

}  // namespace optsig
