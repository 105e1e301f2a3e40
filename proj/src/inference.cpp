#include "mqv/inference.hpp"

#include "mqv/density.hpp"
#include "mqv/error.hpp"
#include "mqv/parallel.hpp"
#include "mqv/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mqv {

namespace {

// Stream tags under the master seed.
constexpr std::uint64_t kResampleStream = 0;
constexpr std::uint64_t kBijectionStream = 1;
constexpr std::uint64_t kBijectionResampleStream = 2;
constexpr int kMaxBijectionRetries = 3;

std::pair<double, double> min_max(std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return {*lo, *hi};
}

PointSet standardized_points(const SamplePair& pair) {
    PointSet pts;
    pts.columns.push_back(standardize(pair.x).values);
    pts.columns.push_back(standardize(pair.y).values);
    return pts;
}

ScoreSample score_resample(const KdeModel& kde, std::size_t n, Seed stream) {
    Rng rng = stream.rng();
    const PointSet draw = resample(kde, n, rng);
    const auto& x = draw.columns[0];
    const auto& y = draw.columns[1];
    return {mqv_score_directed(x, y), mqv_score_directed(y, x), 0, 0};
}

DecisionRecord summarize(std::span<const ScoreSample> samples) {
    std::vector<double> cx(samples.size());
    std::vector<double> cy(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        cx[i] = samples[i].c_xy;
        cy[i] = samples[i].c_yx;
    }
    return make_decision(compare_score_clouds(cx, cy));
}

}  // namespace

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::XtoY: return "XtoY";
        case Direction::YtoX: return "YtoX";
        case Direction::Undecided: return "Undecided";
    }
    return "Undecided";
}

Direction direction_from_string(std::string_view name) {
    if (name == "XtoY") return Direction::XtoY;
    if (name == "YtoX") return Direction::YtoX;
    if (name == "Undecided") return Direction::Undecided;
    throw std::invalid_argument("unknown direction: " + std::string(name));
}

double compare_score_clouds(std::span<const double> cx, std::span<const double> cy) {
    if (cx.empty() || cy.empty()) throw std::invalid_argument("score clouds must be non-empty");
    std::vector<double> sorted_cy(cy.begin(), cy.end());
    std::sort(sorted_cy.begin(), sorted_cy.end());
    std::uint64_t count = 0;
    for (double c : cx) {
        count += static_cast<std::uint64_t>(
            std::lower_bound(sorted_cy.begin(), sorted_cy.end(), c) - sorted_cy.begin());
    }
    return static_cast<double>(count) /
           (static_cast<double>(cx.size()) * static_cast<double>(cy.size()));
}

double confidence(double p_x) { return std::abs(p_x - 0.5); }

DecisionRecord make_decision(double p_x) {
    DecisionRecord r;
    r.p_x = p_x;
    r.p_y = 1.0 - p_x;
    r.confidence = confidence(p_x);
    r.direction = p_x > 0.5 ? Direction::XtoY
                : p_x < 0.5 ? Direction::YtoX
                            : Direction::Undecided;
    return r;
}

InferenceResult infer_no_bijections(const SamplePair& pair, std::size_t m, std::uint64_t seed,
                                    std::size_t workers) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    validate(pair);
    const Seed root(seed);
    const std::size_t n = pair.size();
    const KdeModel kde = fit_kde(standardized_points(pair));

    std::vector<ScoreSample> samples(m);
    parallel_for(m, workers, [&](std::size_t i) {
        samples[i] = score_resample(kde, n, root.child({kResampleStream, i}));
        samples[i].resample_index = i;
    });

    InferenceResult out;
    out.record = summarize(samples);
    out.record.m = m;
    out.record.M = 0;
    out.record.seed = seed;
    out.record.n = n;
    out.samples = std::move(samples);
    return out;
}

InferenceResult infer_with_bijections(const SamplePair& pair, const InferenceOptions& opts,
                                      std::uint64_t seed) {
    if (opts.M < 1) throw std::invalid_argument("M must be at least 1");
    if (opts.m < 1) throw std::invalid_argument("m must be at least 1");
    validate(pair);
    const Seed root(seed);
    const std::size_t n = pair.size();
    const std::size_t m = opts.m;

    const auto xs = standardize(pair.x).values;
    const auto ys = standardize(pair.y).values;
    const auto [x_lo, x_hi] = min_max(xs);
    const auto [y_lo, y_hi] = min_max(ys);

    std::vector<ScoreSample> samples(opts.M * m);
    parallel_for(opts.M, opts.workers, [&](std::size_t j) {
        PointSet mapped;
        for (int attempt = 0;; ++attempt) {
            try {
                Rng rng = root.child({kBijectionStream, j, static_cast<std::uint64_t>(attempt)}).rng();
                const auto f = sample_monotone_map(x_lo, x_hi, opts.grid_size, rng);
                const auto g = sample_monotone_map(y_lo, y_hi, opts.grid_size, rng);
                mapped.columns = {apply_map(f, xs), apply_map(g, ys)};
                break;
            } catch (const NumericalFailure&) {
                if (attempt >= kMaxBijectionRetries) throw;
            }
        }
        const KdeModel kde = fit_kde(std::move(mapped));
        for (std::size_t i = 0; i < m; ++i) {
            auto& s = samples[j * m + i];
            s = score_resample(kde, n, root.child({kBijectionResampleStream, j, i}));
            s.bijection_index = j;
            s.resample_index = i;
        }
    });

    InferenceResult out;
    out.record = summarize(samples);
    out.record.m = m;
    out.record.M = opts.M;
    out.record.seed = seed;
    out.record.n = n;
    if (opts.keep_samples) out.samples = std::move(samples);
    return out;
}

InferenceResult infer(const SamplePair& pair, const InferenceOptions& opts, std::uint64_t seed) {
    if (opts.M == 0) {
        auto r = infer_no_bijections(pair, opts.m, seed, opts.workers);
        if (!opts.keep_samples) r.samples.clear();
        return r;
    }
    return infer_with_bijections(pair, opts, seed);
}

}  // namespace mqv
