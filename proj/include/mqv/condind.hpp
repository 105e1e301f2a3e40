#pragma once

// Conditional-independence test for X and Y given a scalar Z.
//
// The co-quadratic variation of (f(X), g(Y)) sorted by Z estimates
// E[Cov(f(X), g(Y) | Z)], which vanishes for every bounded transformation pair
// when X and Y are independent given Z. The test draws many random monotone
// pairs (f, g) and rejects independence when more than `frac_limit` of the
// absolute estimates exceed `threshold`.

#include "mqv/qv_core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mqv {

struct CondIndOptions {
    double threshold = 0.15;
    double frac_limit = 0.01;
    std::size_t bijections = 1000;
    std::size_t grid_size = 128;
    std::size_t workers = 1;  // 0 = hardware concurrency
};

struct CondIndResult {
    bool independent = true;
    double exceed_fraction = 0.0;
    std::vector<double> values;  // |co-QV| per bijection draw
    double threshold = 0.15;
    double frac_limit = 0.01;
    std::size_t bijection_count = 0;
    bool small_sample = false;  // N < kCondIndMinSamples
};

inline constexpr std::size_t kCondIndMinSamples = 50;

CondIndResult cond_independence_test(const Triplet& t, const CondIndOptions& opts,
                                     std::uint64_t seed);

/// Variant taking the conditioning set as columns. Only one column is
/// supported; more throw UnsupportedDimension.
CondIndResult cond_independence_test(std::span<const double> x, std::span<const double> y,
                                     std::span<const std::vector<double>> z_columns,
                                     const CondIndOptions& opts, std::uint64_t seed);

}  // namespace mqv
