#include "optsig/hardgen.hpp"

#include <algorithm>
#include <stdexcept>

#include "optsig/auction.hpp"
#include "optsig/signals.hpp"

namespace optsig {

PartitionReduction make_partition_reduction(std::vector<long> c) {
    if (c.empty()) throw std::invalid_argument("need at least one weight");
    for (long x : c)
        if (x <= 0) throw std::invalid_argument("weights must be positive");
    std::sort(c.begin(), c.end(), std::greater<>());

    PartitionReduction red;
    red.c = c;
    const int n = static_cast<int>(c.size());
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, n);
    red.big_m = mpz_class(c[0]) * pow2;

    long sum_all = 0;
    for (long x : c) sum_all += x;
    for (int i = 0; i < n; ++i) {
        Rat t = Rat(sum_all - c[i]) / (2 * Rat(red.big_m));
        Rat r = Rat(c[i]) / (Rat(red.big_m) * (2 - t));
        Rat q = r * (1 - t);
        red.t.push_back(t);
        red.r.push_back(r);
        red.q.push_back(q);

        DiscreteDistribution d;
        d.support = {Rat(0), t + 1, Rat(3)};
        d.mass = {1 - q - r, r, q};
        red.instance.buyers.push_back(std::move(d));
    }
    DiscreteDistribution last;
    last.support = {Rat(1)};
    last.mass = {Rat(1)};
    red.instance.buyers.push_back(std::move(last));
    validate(red.instance);
    return red;
}

Rat pooled_virtual_value(const PartitionReduction& red, int buyer) {
    // Pool the two positive values: blocks {0} and {t_i+1, 3}.
    MonotonePartition part{{Block{0, 0}, Block{1, 2}}};
    DiscreteDistribution post = induce_posterior(red.instance.buyers.at(buyer), part);
    return virtual_values(post).atoms.back().virtual_value;
}

Rat disclosed_mid_virtual_value(const PartitionReduction& red, int buyer) {
    return virtual_values(red.instance.buyers.at(buyer)).atoms[1].virtual_value;
}

SubsetProductReduction make_subset_product_reduction(std::vector<long> a, long b_param) {
    if (a.empty()) throw std::invalid_argument("need at least one factor");
    for (long x : a)
        if (x <= 1) throw std::invalid_argument("factors must exceed 1");
    if (b_param < 1) throw std::invalid_argument("target must be positive");

    SubsetProductReduction red;
    red.a = std::move(a);
    red.b_param = b_param;
    const Rat denom = Rat(b_param) * b_param + 1;
    for (long ai : red.a) {
        DiscreteDistribution d;
        d.support = {Rat(0), (Rat(b_param) * b_param - ai) / denom, Rat(1)};
        d.mass = {Rat(1, ai * ai), Rat(ai - 1, ai * ai), Rat(ai - 1, ai)};
        for (auto& mass : d.mass) mass.canonicalize();
        red.instance.buyers.push_back(std::move(d));
    }
    validate(red.instance);
    return red;
}

Rat pooled_high_virtual_value(const SubsetProductReduction& red) {
    MonotonePartition part{{Block{0, 0}, Block{1, 2}}};
    DiscreteDistribution post = induce_posterior(red.instance.buyers.at(0), part);
    return virtual_values(post).atoms.back().virtual_value;
}

Rat pooled_low_virtual_value(const SubsetProductReduction& red, int buyer) {
    MonotonePartition part{{Block{0, 1}, Block{2, 2}}};
    DiscreteDistribution post = induce_posterior(red.instance.buyers.at(buyer), part);
    return virtual_values(post).atoms.front().virtual_value;
}

Rat closed_form_revenue(const SubsetProductReduction& red, const std::vector<bool>& in_t) {
    const int n = static_cast<int>(red.a.size());
    if (static_cast<int>(in_t.size()) != n)
        throw std::invalid_argument("membership vector size mismatch");
    Rat prod_s = 1, prod_t = 1;
    for (int i = 0; i < n; ++i) {
        if (in_t[i]) prod_t *= Rat(1, red.a[i] * red.a[i]);
        else prod_s *= Rat(1, red.a[i]);
    }
    prod_s.canonicalize();
    prod_t.canonicalize();
    Rat b2 = Rat(red.b_param) * red.b_param;
    return 1 - prod_s + prod_s * (1 - prod_t) * b2 / (b2 + 1);
}

}  // namespace optsig
