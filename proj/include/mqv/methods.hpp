#pragma once

// Uniform dispatch over the causal-direction methods so that benchmarks and the
// robustness study can treat them interchangeably.

#include "mqv/inference.hpp"
#include "mqv/qv_core.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mqv {

enum class Method { MqvAlg1, MqvAlg2, IGCI, Strawman, RECI };

std::string_view to_string(Method m);
/// Accepts the canonical names ("MQV-Alg1", "MQV-Alg2", "IGCI", "Strawman",
/// "RECI") case-insensitively, plus the short aliases "mqv1" and "mqv2".
Method method_from_string(std::string_view name);
/// Parses a comma-separated list.
std::vector<Method> parse_methods(std::string_view list);

struct MethodParams {
    std::size_t m = kDefaultResamples;
    std::size_t M = kDefaultBijections;
    std::size_t grid_size = 128;
};

struct MethodDecision {
    Direction direction = Direction::Undecided;
    double confidence = 0.0;  // the method's own ranking score
};

/// Runs one method. `seed` feeds the stochastic methods (MQV, strawman ties).
MethodDecision run_method(Method method, const SamplePair& pair, const MethodParams& params,
                          std::uint64_t seed);

}  // namespace mqv
