#include "mqv/report.hpp"

#include "mqv/parallel.hpp"
#include "mqv/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace mqv {

namespace {
constexpr std::uint64_t kMethodStream = ~std::uint64_t{0};
}  // namespace

std::vector<CurvePoint> decision_curve(std::span<const EvaluationRow> rows) {
    if (rows.empty()) throw std::invalid_argument("decision curve needs at least one row");
    std::vector<const EvaluationRow*> ranked;
    ranked.reserve(rows.size());
    for (const auto& r : rows) {
        if (!(r.weight > 0.0)) throw std::invalid_argument("row weights must be positive");
        ranked.push_back(&r);
    }
    std::sort(ranked.begin(), ranked.end(), [](const EvaluationRow* a, const EvaluationRow* b) {
        return std::tie(b->confidence, a->id, a->method, a->correct, a->weight) <
               std::tie(a->confidence, b->id, b->method, b->correct, b->weight);
    });

    std::vector<CurvePoint> curve;
    curve.reserve(ranked.size());
    double hit = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < ranked.size(); ++k) {
        total += ranked[k]->weight;
        if (ranked[k]->correct) hit += ranked[k]->weight;
        curve.push_back({k + 1, hit / total});
    }
    return curve;
}

double weighted_accuracy(std::span<const EvaluationRow> rows) {
    if (rows.empty()) throw std::invalid_argument("weighted accuracy needs at least one row");
    double hit = 0.0;
    double total = 0.0;
    for (const auto& r : rows) {
        if (!(r.weight > 0.0)) throw std::invalid_argument("row weights must be positive");
        total += r.weight;
        if (r.correct) hit += r.weight;
    }
    return hit / total;
}

double decision_entropy(std::span<const Direction> decisions) {
    if (decisions.empty()) throw std::invalid_argument("entropy needs at least one decision");
    std::size_t forward = 0;
    for (auto d : decisions) {
        if (d == Direction::Undecided) throw std::invalid_argument("undecided entry in entropy");
        if (d == Direction::XtoY) ++forward;
    }
    const double n = static_cast<double>(decisions.size());
    double h = 0.0;
    for (double c : {static_cast<double>(forward), n - static_cast<double>(forward)}) {
        if (c > 0.0) h -= (c / n) * std::log(c / n);
    }
    return h;
}

std::size_t binomial_quantile(std::size_t k, double p, double q) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in (0, 1]");
    if (p == 0.0) return 0;
    if (p == 1.0) return k;
    const double kd = static_cast<double>(k);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    double cdf = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
        const double jd = static_cast<double>(j);
        const double log_pmf = std::lgamma(kd + 1.0) - std::lgamma(jd + 1.0) -
                               std::lgamma(kd - jd + 1.0) + jd * log_p + (kd - jd) * log_q;
        cdf += std::exp(log_pmf);
        if (cdf >= q) return j;
    }
    return k;
}

std::vector<EnvelopePoint> binomial_envelope(std::size_t n, double p, double q) {
    if (n < 1) throw std::invalid_argument("envelope needs n >= 1");
    std::vector<EnvelopePoint> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
        out.push_back({k, static_cast<double>(binomial_quantile(k, p, q)) / static_cast<double>(k)});
    return out;
}

std::vector<RobustnessEntry> robustness_study(const std::vector<LabeledPair>& pairs,
                                              const std::vector<Method>& methods,
                                              const RobustnessOptions& opts, std::uint64_t seed) {
    if (opts.num_bijections < 1) throw std::invalid_argument("need at least one bijection");
    if (methods.empty()) throw std::invalid_argument("no methods selected");
    const Seed root(seed);
    const std::size_t nb = opts.num_bijections;

    std::vector<RobustnessEntry> table(methods.size());
    for (std::size_t k = 0; k < methods.size(); ++k) {
        table[k].method = methods[k];
        table[k].decisions.assign(pairs.size(), std::vector<Direction>(nb, Direction::Undecided));
    }

    parallel_for(pairs.size(), opts.workers, [&](std::size_t p) {
        const auto& sp = pairs[p].pair;
        const auto [x_lo, x_hi] = std::minmax_element(sp.x.begin(), sp.x.end());
        const auto [y_lo, y_hi] = std::minmax_element(sp.y.begin(), sp.y.end());
        for (std::size_t b = 0; b < nb; ++b) {
            const std::size_t draw = opts.identical_bijections ? 0 : b;
            SamplePair mapped;
            try {
                Rng rng = root.child({p, draw}).rng();
                const auto f = sample_monotone_map(*x_lo, *x_hi, opts.params.grid_size, rng);
                const auto g = sample_monotone_map(*y_lo, *y_hi, opts.params.grid_size, rng);
                mapped = {apply_map(f, sp.x), apply_map(g, sp.y)};
            } catch (const std::exception&) {
                continue;  // every method records a failure for this draw
            }
            for (std::size_t k = 0; k < methods.size(); ++k) {
                // Per pair, not per draw: a method's own randomness stays fixed so that
                // only the reparametrization varies across draws.
                const std::uint64_t method_seed =
                    root.child({p, kMethodStream, static_cast<std::uint64_t>(methods[k])}).value();
                try {
                    table[k].decisions[p][b] =
                        run_method(methods[k], mapped, opts.params, method_seed).direction;
                } catch (const std::exception&) {
                    table[k].decisions[p][b] = Direction::Undecided;
                }
            }
        }
    });

    for (auto& entry : table) {
        entry.per_pair_entropy.assign(pairs.size(), std::numeric_limits<double>::quiet_NaN());
        double sum = 0.0;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            std::vector<Direction> usable;
            for (auto d : entry.decisions[p]) {
                if (d == Direction::Undecided) {
                    ++entry.failed_decisions;
                } else {
                    usable.push_back(d);
                }
            }
            if (usable.empty()) continue;
            entry.per_pair_entropy[p] = decision_entropy(usable);
            sum += entry.per_pair_entropy[p];
            ++entry.pairs_used;
        }
        entry.mean_entropy = entry.pairs_used > 0 ? sum / static_cast<double>(entry.pairs_used)
                                                  : std::numeric_limits<double>::quiet_NaN();
    }
    return table;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve,
                     std::span<const EnvelopePoint> envelope, const std::string& method) {
    const bool with_method = !method.empty();
    out << (with_method ? "method,k,accuracy,envelope\n" : "k,accuracy,envelope\n");
    const auto old_precision = out.precision(10);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (with_method) out << method << ',';
        out << curve[i].k << ',' << curve[i].accuracy << ',';
        if (i < envelope.size()) out << envelope[i].bound;
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace mqv
