#include "mqv/reparam.hpp"

#include "mqv/error.hpp"
#include "mqv/qv_core.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mqv;

TEST(Lengthscale, InverseGammaMeanAndSupport) {
    Rng rng(1);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double g = sample_lengthscale(rng);
        ASSERT_GT(g, 0.0);
        sum += g;
    }
    EXPECT_NEAR(sum / 100000.0, 1.25, 0.05);  // scale / (shape - 1)
}

TEST(Lengthscale, Reproducible) {
    Rng a(77), b(77);
    EXPECT_EQ(sample_lengthscale(a), sample_lengthscale(b));
}

TEST(MonotoneMap, SampledMapsAreStrictlyIncreasing) {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto map = sample_monotone_map(-2.5, 3.0, kDefaultGridSize, rng);
        EXPECT_GT(map.min_gap(), 0.0);
        EXPECT_EQ(map.grid().size(), kDefaultGridSize);
        EXPECT_DOUBLE_EQ(map.grid().front(), -2.5);
        EXPECT_DOUBLE_EQ(map.grid().back(), 3.0);
    }
}

TEST(MonotoneMap, ConstantPathReducesToRamp) {
    const auto grid = uniform_grid(0.0, 4.0, 32);
    const std::vector<double> flat(32, 0.7);
    const auto map = integrate_path(grid, flat);
    const double ramp = kStrictnessRamp * 4.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        EXPECT_NEAR(map.values()[j], 0.7 + ramp * grid[j], 1e-15);
    EXPECT_GT(map.min_gap(), 0.0);
}

TEST(MonotoneMap, TrapezoidIntegralOfPath) {
    // Path f(x) = x on [0, 1]: min 0, running integral x^2 / 2 (exact for linear f).
    const auto grid = uniform_grid(0.0, 1.0, 17);
    const auto map = integrate_path(grid, grid);
    for (std::size_t j = 0; j < grid.size(); ++j)
        EXPECT_NEAR(map.values()[j], grid[j] * grid[j] / 2.0 + kStrictnessRamp * grid[j], 1e-14);
}

TEST(MonotoneMap, RejectsInvalidConstruction) {
    const auto g = uniform_grid(0.0, 1.0, 16);
    auto v = g;
    v[5] = v[4];
    EXPECT_THROW(MonotoneMap(g, v), std::invalid_argument);
    EXPECT_THROW(MonotoneMap(uniform_grid(0.0, 1.0, 8), uniform_grid(0.0, 1.0, 8)),
                 std::invalid_argument);
    Rng rng(1);
    EXPECT_THROW(sample_monotone_map(1.0, 1.0, 64, rng), std::invalid_argument);
    EXPECT_THROW(sample_monotone_map(0.0, 1.0, 8, rng), std::invalid_argument);
}

TEST(ApplyMap, IdentityMapReturnsInput) {
    const auto id = MonotoneMap::identity(-3.0, 3.0, 64);
    const std::vector<double> v{-5.0, -3.0, -0.123, 0.0, 1.7, 3.0, 8.25};
    const auto out = apply_map(id, v);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(out[i], v[i], 1e-12);
}

TEST(ApplyMap, PreservesRanksIncludingExtrapolation) {
    Rng rng(8);
    std::normal_distribution<double> n(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto map = sample_monotone_map(-1.0, 1.0, 64, rng);
        std::vector<double> v(400);
        for (auto& a : v) a = n(rng);
        const auto out = apply_map(map, v);
        EXPECT_EQ(sort_order(v), sort_order(out));
    }
}

TEST(ApplyMap, MqvScoreUnchangedWhenOrderingVariableIsMapped) {
    Rng rng(12);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> x(1000), y(1000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = n(rng);
        y[i] = std::sin(3.0 * x[i]) + 0.3 * n(rng);
    }
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = sample_monotone_map(*lo, *hi, kDefaultGridSize, rng);
        EXPECT_EQ(mqv_score_directed(SamplePair{x, y}),
                  mqv_score_directed(SamplePair{apply_map(f, x), y}));
        // and with y mapped too: only y's values change, not the order
        const auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
        const auto g = sample_monotone_map(*ylo, *yhi, kDefaultGridSize, rng);
        const auto gy = apply_map(g, y);
        EXPECT_EQ(mqv_score_directed(SamplePair{apply_map(f, x), gy}),
                  mqv_score_directed(SamplePair{x, gy}));
    }
}

TEST(GpPathSampler, MarginalVarianceIsOne) {
    const auto grid = uniform_grid(-3.0, 3.0, kDefaultGridSize);
    const GpPathSampler sampler(grid, 1.25);
    Rng rng(4);
    const std::size_t draws = 10000;
    std::vector<double> sum(grid.size(), 0.0), sumsq(grid.size(), 0.0);
    for (std::size_t d = 0; d < draws; ++d) {
        const auto f = sampler.draw(rng);
        for (std::size_t j = 0; j < f.size(); ++j) {
            sum[j] += f[j];
            sumsq[j] += f[j] * f[j];
        }
    }
    for (std::size_t j : {std::size_t{0}, std::size_t{31}, std::size_t{64}, std::size_t{127}}) {
        const double mean = sum[j] / draws;
        const double var = sumsq[j] / draws - mean * mean;
        EXPECT_NEAR(var, 1.0, 0.05) << "grid index " << j;
    }
}

TEST(GpPathSampler, LongLengthscaleStillFactorizes) {
    const auto grid = uniform_grid(0.0, 1.0, 256);
    EXPECT_NO_THROW(GpPathSampler(grid, 50.0));
}
