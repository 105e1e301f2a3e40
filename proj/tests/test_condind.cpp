#include "mqv/condind.hpp"

#include "mqv/error.hpp"
#include "mqv/datasets.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mqv;

namespace {

CondIndOptions small_options(std::size_t b = 200) {
    CondIndOptions o;
    o.bijections = b;
    return o;
}

}  // namespace

TEST(CondInd, ChainWithoutEdgeCoQvIsSmall) {
    // X <- Z -> Y with independent noises: every draw's |co-QV| should stay near zero
    Rng rng(2);
    std::normal_distribution<double> nd(0.0, 1.0);
    Triplet t;
    for (int i = 0; i < 5000; ++i) {
        const double z = nd(rng);
        t.z.push_back(z);
        t.x.push_back(std::sin(z) + 0.8 * nd(rng));
        t.y.push_back(z * z + 0.8 * nd(rng));
    }
    const auto r = cond_independence_test(t, small_options(100), 5);
    double mean = 0.0;
    for (double v : r.values) mean += v;
    mean /= static_cast<double>(r.values.size());
    EXPECT_LT(mean, 0.05);
    EXPECT_TRUE(r.independent);
}

TEST(CondInd, IdenticalVariablesAreDependent) {
    Rng rng(4);
    std::normal_distribution<double> nd(0.0, 1.0);
    Triplet t;
    for (int i = 0; i < 1000; ++i) {
        t.x.push_back(nd(rng));
        t.y.push_back(t.x.back());
        t.z.push_back(nd(rng));
    }
    const auto r = cond_independence_test(t, small_options(), 1);
    EXPECT_GT(r.exceed_fraction, 0.95);
    EXPECT_FALSE(r.independent);
    EXPECT_EQ(r.values.size(), 200u);
    EXPECT_EQ(r.bijection_count, 200u);
}

TEST(CondInd, AcceptsGeneratedForkTriplets) {
    Rng rng(9);
    const auto triplets = generate_ci_triplets(1000, 10, false, rng);
    int accepted = 0;
    for (std::size_t i = 0; i < triplets.size(); ++i)
        if (cond_independence_test(triplets[i], small_options(), i).independent) ++accepted;
    EXPECT_GE(accepted, 9);
}

TEST(CondInd, DecisionRuleMatchesValues) {
    Rng rng(6);
    const auto t = generate_ci_triplets(400, 1, false, rng).front();
    const auto r = cond_independence_test(t, small_options(), 3);
    std::size_t above = 0;
    for (double v : r.values) {
        EXPECT_GE(v, 0.0);
        if (v > r.threshold) ++above;
    }
    EXPECT_DOUBLE_EQ(r.exceed_fraction, static_cast<double>(above) / 200.0);
    EXPECT_EQ(r.independent, r.exceed_fraction <= r.frac_limit);
}

TEST(CondInd, DeterministicAcrossWorkers) {
    Rng rng(8);
    const auto t = generate_ci_triplets(300, 1, true, rng).front();
    auto opts = small_options(60);
    const auto a = cond_independence_test(t, opts, 42);
    opts.workers = 4;
    const auto b = cond_independence_test(t, opts, 42);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.independent, b.independent);
}

TEST(CondInd, SmallSampleFlag) {
    Rng rng(1);
    const auto t = generate_ci_triplets(100, 1, false, rng).front();
    Triplet small{{t.x.begin(), t.x.begin() + 30}, {t.y.begin(), t.y.begin() + 30},
                  {t.z.begin(), t.z.begin() + 30}};
    EXPECT_TRUE(cond_independence_test(small, small_options(10), 1).small_sample);
    EXPECT_FALSE(cond_independence_test(t, small_options(10), 1).small_sample);
}

TEST(CondInd, MultiColumnConditioningUnsupported) {
    std::vector<double> x{1, 2, 3, 4}, y{4, 3, 2, 1};
    std::vector<std::vector<double>> z{{1, 2, 3, 4}, {0, 1, 0, 1}};
    EXPECT_THROW(cond_independence_test(x, y, z, small_options(5), 1), UnsupportedDimension);
}

TEST(CondInd, RejectsDegenerateInput) {
    Triplet t{{1, 2, 3, 4, 5}, {1, 1, 1, 1, 1}, {5, 4, 3, 2, 1}};
    EXPECT_THROW(cond_independence_test(t, small_options(5), 1), DegenerateInput);
}
