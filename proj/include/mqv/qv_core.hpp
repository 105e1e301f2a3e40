#pragma once

// Quadratic-variation estimators.
//
// For a pair sorted by x, the mean squared consecutive difference of y tends to
// twice the expected conditional variance E[Var(Y|X)]. On standardized y this
// gives the score
//
//     C(X->Y) = 1 - sum_i (y[i+1] - y[i])^2 / (2 (N - 1)),
//
// which tends to Var(E[Y|X]) / Var(Y), i.e. how well X predicts Y without
// fitting any regression. The co-quadratic variation is the polarization
// analogue for a triplet sorted by z and tends to E[Cov(X, Y | Z)].

#include "mqv/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mqv {

/// Paired observations (x_i, y_i).
struct SamplePair {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const noexcept { return x.size(); }
};

struct Triplet {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;

    std::size_t size() const noexcept { return x.size(); }
};

struct StandardizedSeries {
    std::vector<double> values;
    double original_mean = 0.0;
    double original_std = 1.0;
};

/// Pair of directed scores, c_xy = C(X->Y) and c_yx = C(Y->X).
struct MqvScore {
    double c_xy = 0.0;
    double c_yx = 0.0;
};

/// Throws std::invalid_argument unless lengths match, N >= 3 and all values are finite.
void validate(const SamplePair& pair);
void validate(const Triplet& t);

/// Sample mean and standard deviation (divisor N - 1).
double sample_mean(std::span<const double> v);
double sample_std(std::span<const double> v);

/// Centers and scales to unit sample standard deviation.
/// Throws DegenerateInput for a constant vector.
StandardizedSeries standardize(std::span<const double> v);

/// Indices that sort `keys` ascending; ties keep their input order.
std::vector<std::size_t> sort_order(std::span<const double> keys);

/// Returns the pair sorted by x with y permuted alongside.
///
/// Before sorting, x receives additive uniform jitter in [-j, j] with
/// j = jitter_scale * std(x), which breaks exact ties at random. The returned
/// x values are the jittered ones. jitter_scale = 0 sorts the raw values.
SamplePair sort_pair_by_x(const SamplePair& pair, double jitter_scale, Rng& rng);

/// Default relative jitter magnitude for tie-breaking.
inline constexpr double kTieJitter = 1e-9;

/// C(X->Y) for the pair as given. Ties in x keep their input order.
double mqv_score_directed(const SamplePair& pair);

/// Same score with x and y supplied separately (x orders, y is scored).
double mqv_score_directed(std::span<const double> x, std::span<const double> y);

MqvScore mqv_score(const SamplePair& pair);

/// Unstandardized ordered quadratic variation: sum (y[i+1]-y[i])^2 / (N-1)
/// with y sorted by x. Tends to 2 E[Var(Y|X)].
double ordered_quadratic_variation(std::span<const double> x, std::span<const double> y);

/// Mean co-quadratic variation of standardized x and y sorted by z, with
/// uniform weights 1 / (8 (N - 1)).
double co_quadratic_variation(const Triplet& t);

/// Co-quadratic variation given a precomputed z order. `order` must be a
/// permutation of [0, N).
double co_quadratic_variation(std::span<const double> x, std::span<const double> y,
                              std::span<const std::size_t> order);

}  // namespace mqv
