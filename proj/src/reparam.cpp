#include "mqv/reparam.hpp"

#include "mqv/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mqv {

namespace {

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

}  // namespace

MonotoneMap::MonotoneMap(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size())
        throw std::invalid_argument("grid and values differ in length");
    if (grid_.size() < kMinGridSize)
        throw std::invalid_argument("monotone map needs at least 16 grid points");
    if (!strictly_increasing(grid_)) throw std::invalid_argument("grid not strictly increasing");
    if (!strictly_increasing(values_))
        throw std::invalid_argument("map values not strictly increasing");
}

MonotoneMap MonotoneMap::identity(double lo, double hi, std::size_t grid_size) {
    auto g = uniform_grid(lo, hi, grid_size);
    auto v = g;
    return MonotoneMap(std::move(g), std::move(v));
}

double MonotoneMap::operator()(double v) const {
    const std::size_t n = grid_.size();
    std::size_t seg;
    if (v <= grid_.front()) {
        seg = 0;
    } else if (v >= grid_.back()) {
        seg = n - 2;
    } else {
        // Segment [grid[seg], grid[seg+1]) containing v.
        seg = static_cast<std::size_t>(std::upper_bound(grid_.begin(), grid_.end(), v) -
                                       grid_.begin()) - 1;
    }
    if (v == grid_[seg]) return values_[seg];
    const double slope = (values_[seg + 1] - values_[seg]) / (grid_[seg + 1] - grid_[seg]);
    return values_[seg] + (v - grid_[seg]) * slope;
}

double MonotoneMap::min_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values_.size(); ++i)
        gap = std::min(gap, values_[i] - values_[i - 1]);
    return gap;
}

double sample_lengthscale(Rng& rng) {
    std::gamma_distribution<double> gamma(kLengthscaleShape, 1.0);
    double g = gamma(rng);
    while (!(g > 0.0)) g = gamma(rng);
    return kLengthscaleScale / g;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t grid_size) {
    if (!(lo < hi)) throw std::invalid_argument("grid requires lo < hi");
    if (grid_size < 2) throw std::invalid_argument("grid requires at least 2 points");
    std::vector<double> grid(grid_size);
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);
    for (std::size_t i = 0; i < grid_size; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

GpPathSampler::GpPathSampler(std::span<const double> grid, double gamma) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    lower_.resize(n, n);
    double jitter = kCovarianceJitter;
    for (int attempt = 0; attempt <= 3; ++attempt, jitter *= 10.0) {
        // Only the lower triangle is read by the factorization.
        for (Eigen::Index j = 0; j < n; ++j) {
            lower_(j, j) = 1.0 + jitter;
            for (Eigen::Index i = j + 1; i < n; ++i) {
                const double d = grid[i] - grid[j];
                lower_(i, j) = std::exp(-d * d / (2.0 * gamma));
            }
        }
        Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(lower_);
        if (llt.info() == Eigen::Success) {
            jitter_ = jitter;
            return;
        }
    }
    throw NumericalFailure("GP covariance Cholesky failed after jitter retries");
}

std::vector<double> GpPathSampler::draw(Rng& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(lower_.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
    const Eigen::VectorXd f = lower_.triangularView<Eigen::Lower>() * z;
    return {f.data(), f.data() + f.size()};
}

MonotoneMap integrate_path(std::span<const double> grid, std::span<const double> path) {
    if (grid.size() != path.size()) throw std::invalid_argument("grid/path length mismatch");
    if (grid.size() < 2) throw std::invalid_argument("grid too small");
    const double lo = grid.front();
    const double hi = grid.back();
    const double f_min = *std::min_element(path.begin(), path.end());
    const double ramp = kStrictnessRamp * (hi - lo);

    std::vector<double> values(grid.size());
    double integral = 0.0;
    values[0] = f_min;
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double left = path[j - 1] - f_min;
        const double right = path[j] - f_min;
        integral += 0.5 * (left + right) * (grid[j] - grid[j - 1]);
        values[j] = f_min + integral + ramp * (grid[j] - lo);
    }
    return MonotoneMap(std::vector<double>(grid.begin(), grid.end()), std::move(values));
}

MonotoneMap sample_monotone_map(double lo, double hi, std::size_t grid_size, Rng& rng) {
    if (!(lo < hi)) throw std::invalid_argument("monotone map requires lo < hi");
    if (grid_size < MonotoneMap::kMinGridSize)
        throw std::invalid_argument("monotone map needs at least 16 grid points");
    const auto grid = uniform_grid(lo, hi, grid_size);
    const double gamma = sample_lengthscale(rng);
    const GpPathSampler sampler(grid, gamma);
    const auto path = sampler.draw(rng);
    return integrate_path(grid, path);
}

std::vector<double> apply_map(const MonotoneMap& map, std::span<const double> v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [&](double a) { return map(a); });
    return out;
}

}  // namespace mqv
