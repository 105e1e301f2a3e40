#pragma once

// Synthetic benchmark generators and the cause-effect-pairs file format.
//
// The generators are qualitative analogues of the usual simulated benchmark
// families: a Gaussian-mixture cause pushed through a random sum of sines plus
// additive Gaussian noise (SIM), the same at low noise (SIM_ln), with a hidden
// confounder feeding both variables (SIM_c), and with a Gaussian cause (SIM_G).

#include "mqv/inference.hpp"
#include "mqv/qv_core.hpp"
#include "mqv/random.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mqv {

struct LabeledPair {
    SamplePair pair;
    Direction truth = Direction::XtoY;
    double weight = 1.0;
    std::string id;
};

enum class SimKind { SIM, SIM_c, SIM_ln, SIM_G };

std::string_view to_string(SimKind k);
/// Accepts "SIM", "SIM-c"/"SIM_c", "SIM-ln"/"SIM_ln", "SIM-G"/"SIM_G" (case-insensitive).
SimKind sim_kind_from_string(std::string_view name);

struct SimConfig {
    SimKind kind = SimKind::SIM;
    std::size_t n = 1000;
    std::size_t pairs = 100;
    std::uint64_t seed = 0;
    double confounder_weight = 0.5;
};

/// Throws std::invalid_argument unless n >= 100 and pairs >= 1.
void validate(const SimConfig& cfg);

/// Random smooth mechanism x -> sum_r a_r sin(w_r x + phi_r), r = 1..10, with
/// a_r ~ N(0, 1/r^2), w_r ~ U(0.5, 3), phi_r ~ U(0, 2 pi).
class RandomMechanism {
public:
    explicit RandomMechanism(Rng& rng);

    double operator()(double x) const;

    /// Evaluates on `v` and rescales the result to unit sample variance.
    std::vector<double> apply_unit_variance(std::span<const double> v) const;

    static constexpr std::size_t kTerms = 10;

private:
    std::vector<double> amplitude_;
    std::vector<double> frequency_;
    std::vector<double> phase_;
};

/// n draws from a random Gaussian mixture with 1..5 equally weighted components,
/// means ~ U(-2, 2) and standard deviations ~ U(0.5, 1.5).
std::vector<double> sample_gaussian_mixture(std::size_t n, Rng& rng);

LabeledPair generate_pair(const SimConfig& cfg, Rng& rng);

/// All cfg.pairs pairs; pair p draws from stream Seed(cfg.seed).child(p) and is
/// named "pairNNNN" with NNNN = p + 1.
std::vector<LabeledPair> generate_dataset(const SimConfig& cfg);

/// Triplets with X <- Z -> Y. With `with_edge`, a direct edge X -> Y or Y -> X
/// (fair coin) adds `edge_weight` * g(parent) to the child.
std::vector<Triplet> generate_ci_triplets(std::size_t n, std::size_t pairs, bool with_edge,
                                          Rng& rng, double edge_weight = 0.7);

/// Numeric columns of a whitespace-separated text file; '#' lines and blank
/// lines are skipped. Throws ParseError naming the line on bad tokens or
/// ragged rows, IoError if the file cannot be read.
std::vector<std::vector<double>> load_columns(const std::filesystem::path& file);

/// Reads pairmeta.txt and the matching pairNNNN.txt files, keeping only pairs
/// whose cause and effect are single columns.
std::vector<LabeledPair> load_cep_directory(const std::filesystem::path& dir);

/// Reads a JSON manifest written by write_dataset.
std::vector<LabeledPair> load_manifest(const std::filesystem::path& manifest);

/// A manifest file, or a directory holding manifest.json or pairmeta.txt.
std::vector<LabeledPair> load_dataset(const std::filesystem::path& path);

/// Writes one observation per line with round-trip precision.
void write_pair_file(const std::filesystem::path& file, const SamplePair& pair);

struct DatasetInfo {
    std::string kind;
    std::uint64_t seed = 0;
    std::size_t n = 0;
};

/// Writes `<id>.txt` per pair, pairmeta.txt, and manifest.json into `dir`.
void write_dataset(const std::filesystem::path& dir, const std::vector<LabeledPair>& pairs,
                   const DatasetInfo& info);

}  // namespace mqv
