#pragma once

// Monte-Carlo causal direction inference.
//
// Without bijections: fit a KDE to the standardized pair, draw m smoothed
// bootstrap resamples, score each, and estimate p_x = P(C(X->Y) > C(Y->X)) from
// the pooled score clouds. With bijections: repeat that for M independent
// random monotone reparametrizations (f(X), g(Y)) and pool all m*M scores.

#include "mqv/qv_core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mqv {

enum class Direction { XtoY, YtoX, Undecided };

std::string_view to_string(Direction d);
/// Throws std::invalid_argument for an unknown name.
Direction direction_from_string(std::string_view name);

struct ScoreSample {
    double c_xy = 0.0;
    double c_yx = 0.0;
    std::size_t bijection_index = 0;
    std::size_t resample_index = 0;
};

struct DecisionRecord {
    double p_x = 0.5;
    double p_y = 0.5;
    Direction direction = Direction::Undecided;
    double confidence = 0.0;
    std::size_t m = 0;
    std::size_t M = 0;  // 0 when no bijections were used
    std::uint64_t seed = 0;
    std::size_t n = 0;
};

struct InferenceResult {
    DecisionRecord record;
    std::vector<ScoreSample> samples;
};

inline constexpr std::size_t kDefaultResamples = 300;
inline constexpr std::size_t kDefaultBijections = 100;

struct InferenceOptions {
    std::size_t m = kDefaultResamples;
    std::size_t M = kDefaultBijections;
    std::size_t grid_size = 128;
    std::size_t workers = 1;     // 0 = hardware concurrency
    bool keep_samples = true;
};

/// p_x = (1 / (|cx| |cy|)) * #{(i, j) : cy[j] < cx[i]}, in O(K log K).
double compare_score_clouds(std::span<const double> cx, std::span<const double> cy);

/// |p_x - 0.5|
double confidence(double p_x);

/// Fills p_y, direction and confidence from p_x.
DecisionRecord make_decision(double p_x);

InferenceResult infer_no_bijections(const SamplePair& pair, std::size_t m, std::uint64_t seed,
                                    std::size_t workers = 1);

InferenceResult infer_with_bijections(const SamplePair& pair, const InferenceOptions& opts,
                                      std::uint64_t seed);

/// Dispatches on opts.M: 0 selects the no-bijection estimator.
InferenceResult infer(const SamplePair& pair, const InferenceOptions& opts, std::uint64_t seed);

}  // namespace mqv
