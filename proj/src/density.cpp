#include "mqv/density.hpp"

#include "mqv/error.hpp"
#include "mqv/qv_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mqv {

KdeModel::KdeModel(PointSet points, std::vector<double> bandwidths)
    : points_(std::move(points)), bandwidths_(std::move(bandwidths)) {
    if (points_.dims() == 0 || points_.size() == 0)
        throw std::invalid_argument("KDE needs at least one point");
    if (bandwidths_.size() != points_.dims())
        throw std::invalid_argument("one bandwidth per dimension required");
    for (const auto& col : points_.columns) {
        if (col.size() != points_.size()) throw std::invalid_argument("ragged point set");
        for (double v : col)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite KDE point");
    }
    for (double h : bandwidths_)
        if (!(h > 0.0) || !std::isfinite(h))
            throw std::invalid_argument("KDE bandwidths must be positive");
}

double silverman_bandwidth(double sigma, std::size_t dims, std::size_t n) {
    const double d = static_cast<double>(dims);
    return sigma * std::pow(4.0 / (d + 2.0), 1.0 / (d + 4.0)) *
           std::pow(static_cast<double>(n), -1.0 / (d + 4.0));
}

KdeModel fit_kde(PointSet points) {
    const std::size_t d = points.dims();
    if (d < 2 || d > 3) throw std::invalid_argument("KDE supports 2 or 3 dimensions");
    const std::size_t n = points.size();
    if (n < 2) throw std::invalid_argument("KDE needs at least 2 points");

    std::vector<double> bandwidths(d);
    for (std::size_t k = 0; k < d; ++k) {
        if (points.columns[k].size() != n) throw std::invalid_argument("ragged point set");
        const double sigma = sample_std(points.columns[k]);
        if (!(sigma > 0.0))
            throw DegenerateInput("degenerate input: zero variance in dimension " +
                                  std::to_string(k));
        bandwidths[k] = silverman_bandwidth(sigma, d, n);
    }
    return KdeModel(std::move(points), std::move(bandwidths));
}

PointSet resample(const KdeModel& model, std::size_t n, Rng& rng) {
    const std::size_t d = model.dims();
    const auto& cols = model.points().columns;
    const auto h = model.bandwidths();

    std::uniform_int_distribution<std::size_t> pick(0, model.size() - 1);
    std::normal_distribution<double> noise(0.0, 1.0);

    PointSet out;
    out.columns.assign(d, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = pick(rng);
        for (std::size_t k = 0; k < d; ++k)
            out.columns[k][i] = cols[k][src] + h[k] * noise(rng);
    }
    return out;
}

}  // namespace mqv
