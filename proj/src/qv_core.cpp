#include "mqv/qv_core.hpp"

#include "mqv/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mqv {

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

}  // namespace

void validate(const SamplePair& pair) {
    if (pair.x.size() != pair.y.size())
        throw std::invalid_argument("pair has unequal lengths");
    if (pair.x.size() < 3)
        throw std::invalid_argument("pair needs at least 3 observations");
    if (!all_finite(pair.x) || !all_finite(pair.y))
        throw std::invalid_argument("pair contains non-finite values");
}

void validate(const Triplet& t) {
    if (t.x.size() != t.y.size() || t.x.size() != t.z.size())
        throw std::invalid_argument("triplet has unequal lengths");
    if (t.x.size() < 3)
        throw std::invalid_argument("triplet needs at least 3 observations");
    if (!all_finite(t.x) || !all_finite(t.y) || !all_finite(t.z))
        throw std::invalid_argument("triplet contains non-finite values");
}

double sample_mean(std::span<const double> v) {
    double sum = 0.0;
    for (double a : v) sum += a;
    return sum / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double mean = sample_mean(v);
    double ss = 0.0;
    for (double a : v) ss += (a - mean) * (a - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

StandardizedSeries standardize(std::span<const double> v) {
    if (v.size() < 2) throw DegenerateInput("degenerate input: fewer than 2 values");
    const double mean = sample_mean(v);
    const double sd = sample_std(v);
    if (!(sd > 0.0) || !std::isfinite(sd))
        throw DegenerateInput("degenerate input: zero variance");

    StandardizedSeries out;
    out.original_mean = mean;
    out.original_std = sd;
    out.values.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.values[i] = (v[i] - mean) / sd;
    return out;
}

std::vector<std::size_t> sort_order(std::span<const double> keys) {
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    return order;
}

SamplePair sort_pair_by_x(const SamplePair& pair, double jitter_scale, Rng& rng) {
    std::vector<double> keys = pair.x;
    if (jitter_scale > 0.0) {
        const double j = jitter_scale * sample_std(pair.x);
        if (j > 0.0) {
            std::uniform_real_distribution<double> unif(-j, j);
            for (double& k : keys) k += unif(rng);
        }
    }
    const auto order = sort_order(keys);
    SamplePair out;
    out.x.reserve(order.size());
    out.y.reserve(order.size());
    for (auto i : order) {
        out.x.push_back(keys[i]);
        out.y.push_back(pair.y[i]);
    }
    return out;
}

double ordered_quadratic_variation(std::span<const double> x, std::span<const double> y) {
    const auto order = sort_order(x);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const double d = y[order[i + 1]] - y[order[i]];
        sum += d * d;
    }
    return sum / static_cast<double>(order.size() - 1);
}

double mqv_score_directed(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("unequal lengths");
    if (x.size() < 3) throw std::invalid_argument("need at least 3 observations");
    const auto ys = standardize(y);
    const auto order = sort_order(x);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const double d = ys.values[order[i + 1]] - ys.values[order[i]];
        sum += d * d;
    }
    return 1.0 - sum / (2.0 * static_cast<double>(order.size() - 1));
}

double mqv_score_directed(const SamplePair& pair) {
    validate(pair);
    return mqv_score_directed(pair.x, pair.y);
}

MqvScore mqv_score(const SamplePair& pair) {
    validate(pair);
    return {mqv_score_directed(pair.x, pair.y), mqv_score_directed(pair.y, pair.x)};
}

double co_quadratic_variation(std::span<const double> x, std::span<const double> y,
                              std::span<const std::size_t> order) {
    if (x.size() != y.size() || x.size() != order.size())
        throw std::invalid_argument("unequal lengths");
    if (x.size() < 3) throw std::invalid_argument("need at least 3 observations");
    const auto xs = standardize(x);
    const auto ys = standardize(y);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t a = order[i];
        const std::size_t b = order[i + 1];
        const double ds = (xs.values[b] + ys.values[b]) - (xs.values[a] + ys.values[a]);
        const double dt = (xs.values[b] - ys.values[b]) - (xs.values[a] - ys.values[a]);
        sum += ds * ds - dt * dt;
    }
    return sum / (8.0 * static_cast<double>(order.size() - 1));
}

double co_quadratic_variation(const Triplet& t) {
    validate(t);
    const auto order = sort_order(t.z);
    return co_quadratic_variation(t.x, t.y, order);
}

}  // namespace mqv
