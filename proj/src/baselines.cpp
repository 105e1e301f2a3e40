#include "mqv/baselines.hpp"

#include "mqv/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace mqv {

namespace {

std::vector<double> rescale_unit(std::span<const double> v) {
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    if (!(range > 0.0)) throw DegenerateInput("degenerate input: constant variable");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / range;
    return out;
}

double igci_directed(std::span<const double> a, std::span<const double> b) {
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a[i] < a[j] || (a[i] == a[j] && b[i] < b[j]);
    });

    std::vector<std::size_t> kept;
    kept.reserve(order.size());
    for (auto i : order)
        if (kept.empty() || a[i] != a[kept.back()]) kept.push_back(i);
    if (kept.size() < 3)
        throw DegenerateInput("degenerate input: fewer than 3 distinct values");

    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < kept.size(); ++k) {
        const double da = a[kept[k + 1]] - a[kept[k]];
        const double db = std::abs(b[kept[k + 1]] - b[kept[k]]);
        if (db == 0.0) continue;
        sum += std::log(db / da);
    }
    return sum / static_cast<double>(kept.size() - 1);
}

Direction pick_smaller(double score_xy, double score_yx) {
    if (score_xy < score_yx) return Direction::XtoY;
    if (score_yx < score_xy) return Direction::YtoX;
    return Direction::Undecided;
}

std::size_t unique_count(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

struct LinearPart {
    double a = 0.0;
    double b = 0.0;
    double mse = std::numeric_limits<double>::infinity();
    bool ok = false;
};

// Closed-form (a, b) for y ~ a + b * logistic(c x + d).
LinearPart solve_linear(std::span<const double> x, std::span<const double> y, double c,
                        double d, std::vector<double>& buf) {
    const std::size_t n = x.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    double mean_l = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        buf[i] = logistic(c * x[i] + d);
        mean_l += buf[i];
        mean_y += y[i];
    }
    mean_l *= inv_n;
    mean_y *= inv_n;
    double var_l = 0.0;
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dl = buf[i] - mean_l;
        var_l += dl * dl;
        cov += dl * (y[i] - mean_y);
    }
    var_l *= inv_n;
    cov *= inv_n;

    LinearPart out;
    if (!(var_l > 1e-12)) return out;
    out.b = cov / var_l;
    out.a = mean_y - out.b * mean_l;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - out.a - out.b * buf[i];
        sse += r * r;
    }
    out.mse = sse * inv_n;
    out.ok = true;
    return out;
}

constexpr std::size_t kGridSteps = 16;
constexpr int kMaxRefineIterations = 200;
constexpr double kMseTolerance = 1e-8;

}  // namespace

std::string_view to_string(BaselineMethod m) {
    switch (m) {
        case BaselineMethod::IGCI: return "IGCI";
        case BaselineMethod::Strawman: return "Strawman";
        case BaselineMethod::RECI: return "RECI";
    }
    return "IGCI";
}

BaselineDecision igci_slope(const SamplePair& pair) {
    validate(pair);
    const auto x = rescale_unit(pair.x);
    const auto y = rescale_unit(pair.y);

    BaselineDecision out;
    out.method = BaselineMethod::IGCI;
    out.score_xy = igci_directed(x, y);
    out.score_yx = igci_directed(y, x);
    out.direction = pick_smaller(out.score_xy, out.score_yx);
    out.native_confidence = std::abs(out.score_xy - out.score_yx);
    return out;
}

BaselineDecision strawman(const SamplePair& pair, Rng& rng) {
    const double ux = static_cast<double>(unique_count(pair.x));
    const double uy = static_cast<double>(unique_count(pair.y));
    if (ux == 0.0 || uy == 0.0) throw DegenerateInput("degenerate input: empty variable");

    BaselineDecision out;
    out.method = BaselineMethod::Strawman;
    out.score_xy = ux / uy;
    out.score_yx = uy / ux;
    if (out.score_xy < 1.0) {
        out.direction = Direction::XtoY;
    } else if (out.score_xy > 1.0) {
        out.direction = Direction::YtoX;
    } else {
        std::bernoulli_distribution coin(0.5);
        out.direction = coin(rng) ? Direction::XtoY : Direction::YtoX;
    }
    out.native_confidence = std::abs(std::log(out.score_xy));
    return out;
}

LogisticFit fit_logistic(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("bad logistic input");
    std::vector<double> buf(x.size());

    LogisticFit best;
    best.mse = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int sign : {1, -1}) {
        for (std::size_t k = 0; k < kGridSteps; ++k) {
            const double c = sign * std::pow(10.0, -1.0 + 2.0 * static_cast<double>(k) /
                                                             static_cast<double>(kGridSteps - 1));
            for (std::size_t l = 0; l < kGridSteps; ++l) {
                const double d =
                    -3.0 + 6.0 * static_cast<double>(l) / static_cast<double>(kGridSteps - 1);
                const auto lin = solve_linear(x, y, c, d, buf);
                if (!lin.ok) continue;
                any = true;
                if (lin.mse < best.mse) best = {lin.a, lin.b, c, d, lin.mse};
            }
        }
    }
    if (!any) throw FitFailure("logistic fit degenerate at every grid point");

    // Derivative-free coordinate descent over (c, d); (a, b) stay profiled out.
    std::array<double, 2> step{0.25 * std::max(std::abs(best.c), 0.1), 0.25};
    for (int it = 0; it < kMaxRefineIterations; ++it) {
        const double before = best.mse;
        bool moved = false;
        for (int coord = 0; coord < 2; ++coord) {
            for (double dir : {1.0, -1.0}) {
                double c = best.c;
                double d = best.d;
                (coord == 0 ? c : d) += dir * step[coord];
                const auto lin = solve_linear(x, y, c, d, buf);
                if (lin.ok && lin.mse < best.mse) {
                    best = {lin.a, lin.b, c, d, lin.mse};
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) {
            step[0] *= 0.5;
            step[1] *= 0.5;
            if (step[0] < 1e-8 && step[1] < 1e-8) break;
        } else if (before - best.mse < kMseTolerance) {
            break;
        }
    }
    return best;
}

BaselineDecision reci_logistic(const SamplePair& pair) {
    validate(pair);
    if (pair.size() < 8) throw std::invalid_argument("RECI needs at least 8 observations");
    const auto x = standardize(pair.x).values;
    const auto y = standardize(pair.y).values;

    BaselineDecision out;
    out.method = BaselineMethod::RECI;
    out.score_xy = fit_logistic(x, y).mse;
    out.score_yx = fit_logistic(y, x).mse;
    out.direction = pick_smaller(out.score_xy, out.score_yx);
    out.native_confidence = std::abs(out.score_yx - out.score_xy);
    return out;
}

}  // namespace mqv
