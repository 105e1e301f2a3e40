#pragma once

// Subcommand implementations behind the mqv command-line tool.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 degenerate or unsupported input.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

namespace mqv::cli {

enum class Command { infer, benchmark, condind, robustness, gen };
enum class OutputFormat { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDegenerate = 2;

struct RunConfig {
    Command command = Command::infer;
    std::optional<std::string> input_path;
    std::size_t m = 300;
    std::size_t M = 100;  // 0 selects inference without bijections
    std::uint64_t seed = 0;
    std::size_t grid_size = 128;
    double threshold = 0.15;
    double frac_limit = 0.01;
    std::optional<std::size_t> bijections;  // default 1000 (condind) or 20 (robustness)
    std::string methods;                    // empty = per-command default
    OutputFormat output_format = OutputFormat::json;
    std::optional<std::string> output_path;

    // Synthetic data selection for gen, and for condind/robustness without --input.
    std::string kind = "SIM";
    std::size_t n = 1000;
    std::size_t pairs = 100;

    // Thread count; never affects results, so it is not part of the embedded config.
    std::size_t workers = 1;
};

std::string_view to_string(Command c);
std::size_t effective_bijections(const RunConfig& cfg);

/// Reproducibility header embedded in every JSON output.
nlohmann::ordered_json config_json(const RunConfig& cfg);

int cmd_infer(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_condind(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_robustness(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace mqv::cli
