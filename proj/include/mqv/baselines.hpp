#pragma once

// Reference methods used for comparison and the robustness study.

#include "mqv/inference.hpp"
#include "mqv/qv_core.hpp"
#include "mqv/random.hpp"

#include <string_view>

namespace mqv {

enum class BaselineMethod { IGCI, Strawman, RECI };

std::string_view to_string(BaselineMethod m);

/// Direction is Undecided only on an exact score tie (IGCI and RECI);
/// the strawman resolves ties with a coin flip.
struct BaselineDecision {
    BaselineMethod method = BaselineMethod::IGCI;
    Direction direction = Direction::Undecided;
    double score_xy = 0.0;
    double score_yx = 0.0;
    double native_confidence = 0.0;
};

/// Slope-based information-geometric estimator with a uniform reference
/// measure: both variables are rescaled to [0, 1], rows with a repeated value
/// of the ordering variable are dropped, and
///
///     S(X->Y) = 1/(N'-1) * sum log(|y[i+1] - y[i]| / (x[i+1] - x[i]))
///
/// over the x-sorted rows, skipping zero |dy|. Picks X->Y when S(X->Y) < S(Y->X).
/// Throws DegenerateInput with fewer than 3 distinct values in either variable.
BaselineDecision igci_slope(const SamplePair& pair);

/// Ratio of unique-value counts, #unique(x) / #unique(y); X->Y when below 1,
/// a fair coin from `rng` when exactly 1.
BaselineDecision strawman(const SamplePair& pair, Rng& rng);

struct LogisticFit {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double d = 0.0;
    double mse = 0.0;
};

/// Least-squares fit of y ~ a + b * logistic(c * x + d) on the data as given.
/// Throws FitFailure if every grid point gives a constant logistic column.
LogisticFit fit_logistic(std::span<const double> x, std::span<const double> y);

/// Regression-error comparison with the logistic function class on
/// standardized data; X->Y when the X->Y residual error is smaller.
/// Requires N >= 8.
BaselineDecision reci_logistic(const SamplePair& pair);

}  // namespace mqv
