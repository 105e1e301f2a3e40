#include "mqv/condind.hpp"

#include "mqv/error.hpp"
#include "mqv/parallel.hpp"
#include "mqv/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mqv {

namespace {
constexpr std::uint64_t kOrderStream = 0;
constexpr std::uint64_t kMapStream = 1;
}  // namespace

CondIndResult cond_independence_test(const Triplet& t, const CondIndOptions& opts,
                                     std::uint64_t seed) {
    validate(t);
    if (opts.bijections < 1) throw std::invalid_argument("need at least one bijection draw");
    if (!(opts.frac_limit >= 0.0 && opts.frac_limit <= 1.0))
        throw std::invalid_argument("frac_limit must lie in [0, 1]");

    const Seed root(seed);
    const auto xs = standardize(t.x).values;
    const auto ys = standardize(t.y).values;
    const auto [x_lo, x_hi] = std::minmax_element(xs.begin(), xs.end());
    const auto [y_lo, y_hi] = std::minmax_element(ys.begin(), ys.end());

    // Monotone maps never change the z order, so sort once.
    Rng order_rng = root.child(kOrderStream).rng();
    std::vector<double> keys = t.z;
    {
        const double j = kTieJitter * sample_std(t.z);
        if (j > 0.0) {
            std::uniform_real_distribution<double> unif(-j, j);
            for (double& k : keys) k += unif(order_rng);
        }
    }
    const auto order = sort_order(keys);

    CondIndResult out;
    out.threshold = opts.threshold;
    out.frac_limit = opts.frac_limit;
    out.bijection_count = opts.bijections;
    out.small_sample = t.size() < kCondIndMinSamples;
    out.values.resize(opts.bijections);

    parallel_for(opts.bijections, opts.workers, [&](std::size_t b) {
        for (int attempt = 0;; ++attempt) {
            try {
                Rng rng = root.child({kMapStream, b, static_cast<std::uint64_t>(attempt)}).rng();
                const auto f = sample_monotone_map(*x_lo, *x_hi, opts.grid_size, rng);
                const auto g = sample_monotone_map(*y_lo, *y_hi, opts.grid_size, rng);
                out.values[b] =
                    std::abs(co_quadratic_variation(apply_map(f, xs), apply_map(g, ys), order));
                return;
            } catch (const NumericalFailure&) {
                if (attempt >= 3) throw;
            }
        }
    });

    const auto exceed = static_cast<std::size_t>(
        std::count_if(out.values.begin(), out.values.end(),
                      [&](double v) { return v > opts.threshold; }));
    out.exceed_fraction = static_cast<double>(exceed) / static_cast<double>(opts.bijections);
    out.independent = out.exceed_fraction <= opts.frac_limit;
    return out;
}

CondIndResult cond_independence_test(std::span<const double> x, std::span<const double> y,
                                     std::span<const std::vector<double>> z_columns,
                                     const CondIndOptions& opts, std::uint64_t seed) {
    if (z_columns.size() != 1)
        throw UnsupportedDimension("conditioning set must be one-dimensional, got " +
                                   std::to_string(z_columns.size()));
    Triplet t{{x.begin(), x.end()}, {y.begin(), y.end()}, z_columns.front()};
    return cond_independence_test(t, opts, seed);
}

}  // namespace mqv
