#pragma once

#include "mqv/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mqv {

/// Points stored column-wise: columns[d][i] is coordinate d of point i.
struct PointSet {
    std::vector<std::vector<double>> columns;

    std::size_t dims() const noexcept { return columns.size(); }
    std::size_t size() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
};

/// Product-Gaussian kernel density estimate with a per-dimension bandwidth.
class KdeModel {
public:
    /// Throws std::invalid_argument on empty or ragged points, non-finite
    /// values, or a bandwidth that is not strictly positive.
    KdeModel(PointSet points, std::vector<double> bandwidths);

    const PointSet& points() const noexcept { return points_; }
    std::span<const double> bandwidths() const noexcept { return bandwidths_; }
    std::size_t dims() const noexcept { return points_.dims(); }
    std::size_t size() const noexcept { return points_.size(); }

private:
    PointSet points_;
    std::vector<double> bandwidths_;
};

/// Silverman rule of thumb for a product kernel:
/// h_i = sigma_i * (4 / (d + 2))^(1/(d+4)) * N^(-1/(d+4)).
double silverman_bandwidth(double sigma, std::size_t dims, std::size_t n);

/// Fits a KDE with Silverman bandwidths. Requires N >= 2 and d in {2, 3};
/// throws DegenerateInput if any dimension has zero variance.
KdeModel fit_kde(PointSet points);

/// Smoothed bootstrap: each draw is a uniformly chosen data point plus
/// independent N(0, h_i^2) noise per dimension.
PointSet resample(const KdeModel& model, std::size_t n, Rng& rng);

}  // namespace mqv
