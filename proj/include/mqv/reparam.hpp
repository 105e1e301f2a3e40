#pragma once

// Random strictly increasing reparametrizations.
//
// A map is built by drawing a zero-mean Gaussian process path f on a grid over
// [lo, hi] with squared-exponential covariance exp(-(x - x')^2 / (2 gamma)),
// gamma ~ InvGamma(5, 5), and integrating f - min f. The running integral is
// non-decreasing; a tiny linear ramp makes it strictly increasing.

#include "mqv/random.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace mqv {

/// Strictly increasing piecewise-linear map, extrapolated linearly past the grid.
class MonotoneMap {
public:
    /// Throws std::invalid_argument unless both vectors have the same length
    /// G >= kMinGridSize and are strictly increasing.
    MonotoneMap(std::vector<double> grid, std::vector<double> values);

    static MonotoneMap identity(double lo, double hi, std::size_t grid_size);

    double operator()(double v) const;

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double min_gap() const;

    static constexpr std::size_t kMinGridSize = 16;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

inline constexpr double kLengthscaleShape = 5.0;
inline constexpr double kLengthscaleScale = 5.0;
inline constexpr std::size_t kDefaultGridSize = 128;
inline constexpr double kCovarianceJitter = 1e-8;
inline constexpr double kStrictnessRamp = 1e-9;

/// One draw from InvGamma(shape 5, scale 5), i.e. 5 / Gamma(5, 1).
double sample_lengthscale(Rng& rng);

/// Samples zero-mean GP paths on a fixed grid. The Cholesky factor of the
/// covariance is computed once at construction.
class GpPathSampler {
public:
    /// Throws NumericalFailure if the factorization fails even after
    /// raising the diagonal jitter tenfold three times.
    GpPathSampler(std::span<const double> grid, double gamma);

    std::vector<double> draw(Rng& rng) const;

    double jitter() const noexcept { return jitter_; }

private:
    Eigen::MatrixXd lower_;
    double jitter_ = kCovarianceJitter;
};

/// Integrates a GP path into a strictly increasing map on `grid`.
MonotoneMap integrate_path(std::span<const double> grid, std::span<const double> path);

/// Uniform grid of `grid_size` points spanning [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t grid_size);

MonotoneMap sample_monotone_map(double lo, double hi, std::size_t grid_size, Rng& rng);

std::vector<double> apply_map(const MonotoneMap& map, std::span<const double> v);

}  // namespace mqv
