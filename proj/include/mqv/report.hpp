#pragma once

// Evaluation summaries: confidence-ranked decision curves, weighted accuracy,
// decision entropy under reparametrization, and the fair-coin binomial envelope.

#include "mqv/datasets.hpp"
#include "mqv/inference.hpp"
#include "mqv/methods.hpp"

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace mqv {

struct EvaluationRow {
    std::string id;
    std::string method;
    bool correct = false;
    double confidence = 0.0;
    double weight = 1.0;
};

struct CurvePoint {
    std::size_t k = 0;
    double accuracy = 0.0;
};

/// Rows ranked by confidence (descending, ties by id); entry k-1 is the
/// weighted accuracy of the k most confident rows. Throws std::invalid_argument
/// on empty input or a non-positive weight.
std::vector<CurvePoint> decision_curve(std::span<const EvaluationRow> rows);

/// sum(w * correct) / sum(w). Throws std::invalid_argument on empty input.
double weighted_accuracy(std::span<const EvaluationRow> rows);

/// Natural-log entropy of the XtoY / YtoX frequencies, 0 log 0 = 0.
/// Undecided entries are not allowed.
double decision_entropy(std::span<const Direction> decisions);

/// Smallest j with P(Binomial(k, p) <= j) >= q.
std::size_t binomial_quantile(std::size_t k, double p, double q);

struct EnvelopePoint {
    std::size_t k = 0;
    double bound = 0.0;
};

/// For k = 1..n, binomial_quantile(k, p, q) / k.
std::vector<EnvelopePoint> binomial_envelope(std::size_t n, double p = 0.5, double q = 0.975);

struct RobustnessOptions {
    std::size_t num_bijections = 20;
    MethodParams params;
    /// Reuse bijection 0 for every draw (test mode).
    bool identical_bijections = false;
    std::size_t workers = 1;  // parallel over pairs; 0 = hardware concurrency
};

struct RobustnessEntry {
    Method method = Method::MqvAlg1;
    double mean_entropy = 0.0;
    std::size_t pairs_used = 0;
    std::size_t failed_decisions = 0;  // errors and Undecided, excluded
    std::vector<double> per_pair_entropy;  // NaN where a pair had no usable decision
    std::vector<std::vector<Direction>> decisions;  // [pair][bijection], Undecided on failure
};

/// Applies `num_bijections` random monotone map pairs to every pair, records
/// each method's decision per map, and averages the per-pair decision entropy.
std::vector<RobustnessEntry> robustness_study(const std::vector<LabeledPair>& pairs,
                                              const std::vector<Method>& methods,
                                              const RobustnessOptions& opts, std::uint64_t seed);

/// CSV rows "k,accuracy,envelope" preceded by a header.
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve,
                     std::span<const EnvelopePoint> envelope, const std::string& method = {});

}  // namespace mqv
