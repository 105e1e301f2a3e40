#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using mqv::cli::Command;
using mqv::cli::OutputFormat;
using mqv::cli::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--input", cfg.input_path, "Input file or dataset directory");
    sub->add_option("--m", cfg.m, "Resamples per bijection")->check(CLI::PositiveNumber);
    sub->add_option("--M", cfg.M, "Random bijections (0 = none)");
    sub->add_option("--seed", cfg.seed, "Master random seed");
    sub->add_option("--grid-size", cfg.grid_size, "Grid size of random monotone maps")
        ->check(CLI::Range(16, 1 << 16));
    sub->add_option("--threshold", cfg.threshold, "Conditional covariance threshold");
    sub->add_option("--frac-limit", cfg.frac_limit, "Allowed fraction of exceedances")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--bijections", cfg.bijections,
                    "Bijection draws (default 1000 for condind, 20 for robustness)");
    sub->add_option("--methods", cfg.methods,
                    "Comma-separated: MQV-Alg1,MQV-Alg2,IGCI,Strawman,RECI");
    const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json},
                                                      {"csv", OutputFormat::csv}};
    sub->add_option("--format", cfg.output_format, "Output format (json or csv)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", cfg.output_path, "Output file (directory for gen / csv benchmark)");
    sub->add_option("--kind", cfg.kind, "Synthetic family: SIM, SIM-c, SIM-ln, SIM-G");
    sub->add_option("--n", cfg.n, "Observations per synthetic pair");
    sub->add_option("--pairs", cfg.pairs, "Number of synthetic pairs");
    sub->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal direction inference with mean quadratic variation"};
    app.require_subcommand(1);

    RunConfig cfg;
    const std::pair<const char*, Command> commands[] = {
        {"infer", Command::infer},
        {"benchmark", Command::benchmark},
        {"condind", Command::condind},
        {"robustness", Command::robustness},
        {"gen", Command::gen},
    };
    const std::map<std::string, std::string> help{
        {"infer", "Infer the causal direction of a two-column pair file"},
        {"benchmark", "Run methods over a labeled dataset and report accuracy curves"},
        {"condind", "Test conditional independence of x and y given z"},
        {"robustness", "Decision entropy of methods under random monotone maps"},
        {"gen", "Write a synthetic labeled dataset"},
    };
    for (const auto& [name, command] : commands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        add_common(sub, cfg);
        sub->callback([&cfg, command = command] { cfg.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mqv::cli::kExitIo;
    }
    return mqv::cli::run(cfg, std::cout, std::cerr);
}
