#include "commands.hpp"

#include "mqv/condind.hpp"
#include "mqv/datasets.hpp"
#include "mqv/error.hpp"
#include "mqv/inference.hpp"
#include "mqv/methods.hpp"
#include "mqv/parallel.hpp"
#include "mqv/report.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mqv::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Writes to --out when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output_path) {
        std::ofstream f(*cfg.output_path);
        if (!f) throw IoError("cannot write " + *cfg.output_path);
        f << text;
        if (!f) throw IoError("write failed for " + *cfg.output_path);
    } else {
        out << text;
    }
}

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream f(file);
    if (!f) throw IoError("cannot write " + file.string());
    f << text;
    if (!f) throw IoError("write failed for " + file.string());
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const DegenerateInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const UnsupportedDimension& e) {
        err << "error: unsupported input: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ParseError& e) {
        err << "error: parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const MissingMetadata& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: invalid input: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

void require_config(bool ok, const std::string& what) {
    if (!ok) throw IoError("bad configuration: " + what);
}

const std::string& require_input(const RunConfig& cfg) {
    if (!cfg.input_path) throw IoError("--input is required for " + std::string(to_string(cfg.command)));
    return *cfg.input_path;
}

MethodParams method_params(const RunConfig& cfg) {
    MethodParams p;
    p.m = cfg.m;
    p.M = cfg.M;
    p.grid_size = cfg.grid_size;
    return p;
}

ojson record_json(const DecisionRecord& r) {
    ojson j;
    j["p_x"] = r.p_x;
    j["p_y"] = r.p_y;
    j["direction"] = std::string(to_string(r.direction));
    j["confidence"] = r.confidence;
    j["m"] = r.m;
    j["M"] = r.M;
    j["seed"] = r.seed;
    j["n"] = r.n;
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<LabeledPair> dataset_for(const RunConfig& cfg, std::string& label) {
    if (cfg.input_path) {
        label = fs::path(*cfg.input_path).filename().string();
        if (label.empty()) label = fs::path(*cfg.input_path).parent_path().filename().string();
        return load_dataset(*cfg.input_path);
    }
    SimConfig sc;
    sc.kind = sim_kind_from_string(cfg.kind);
    sc.n = cfg.n;
    sc.pairs = cfg.pairs;
    sc.seed = cfg.seed;
    label = std::string(to_string(sc.kind));
    return generate_dataset(sc);
}

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
        case Command::infer: return "infer";
        case Command::benchmark: return "benchmark";
        case Command::condind: return "condind";
        case Command::robustness: return "robustness";
        case Command::gen: return "gen";
    }
    return "infer";
}

std::size_t effective_bijections(const RunConfig& cfg) {
    if (cfg.bijections) return *cfg.bijections;
    return cfg.command == Command::condind ? 1000 : 20;
}

ojson config_json(const RunConfig& cfg) {
    ojson j;
    j["command"] = std::string(to_string(cfg.command));
    j["input"] = cfg.input_path ? ojson(*cfg.input_path) : ojson(nullptr);
    j["m"] = cfg.m;
    j["M"] = cfg.M;
    j["seed"] = cfg.seed;
    j["grid_size"] = cfg.grid_size;
    j["threshold"] = cfg.threshold;
    j["frac_limit"] = cfg.frac_limit;
    j["bijections"] = effective_bijections(cfg);
    j["methods"] = cfg.methods;
    j["format"] = cfg.output_format == OutputFormat::json ? "json" : "csv";
    j["out"] = cfg.output_path ? ojson(*cfg.output_path) : ojson(nullptr);
    j["kind"] = cfg.kind;
    j["n"] = cfg.n;
    j["pairs"] = cfg.pairs;
    return j;
}

int cmd_infer(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_config(cfg.m >= 1, "--m must be at least 1");
        const Stopwatch clock;
        const auto cols = load_columns(require_input(cfg));
        if (cols.size() != 2)
            throw ParseError(*cfg.input_path, 1,
                             "expected 2 columns, found " + std::to_string(cols.size()));
        const SamplePair pair{cols[0], cols[1]};

        InferenceOptions opts;
        opts.m = cfg.m;
        opts.M = cfg.M;
        opts.grid_size = cfg.grid_size;
        opts.workers = cfg.workers;
        opts.keep_samples = false;
        const auto result = infer(pair, opts, cfg.seed);

        if (cfg.output_format == OutputFormat::csv) {
            const auto& r = result.record;
            std::ostringstream os;
            os << "p_x,p_y,direction,confidence,m,M,seed,n\n"
               << fmt(r.p_x) << ',' << fmt(r.p_y) << ',' << to_string(r.direction) << ','
               << fmt(r.confidence) << ',' << r.m << ',' << r.M << ',' << r.seed << ',' << r.n
               << '\n';
            emit(cfg, out, os.str());
        } else {
            ojson j = record_json(result.record);
            j["config"] = config_json(cfg);
            j["elapsed_ms"] = clock.elapsed_ms();
            emit(cfg, out, dump(j));
        }
        return kExitOk;
    });
}

int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_config(cfg.m >= 1, "--m must be at least 1");
        const Stopwatch clock;
        const auto pairs = load_dataset(require_input(cfg));
        if (pairs.empty()) throw IoError("dataset contains no bivariate pairs");
        const auto methods = parse_methods(cfg.methods.empty() ? "MQV-Alg1" : cfg.methods);
        const auto params = method_params(cfg);
        const Seed root(cfg.seed);

        ojson summary = ojson::array();
        ojson per_pair = ojson::array();
        std::ostringstream curves_csv;
        std::ostringstream pairs_csv;
        curves_csv << "method,k,accuracy,envelope\n";
        pairs_csv << "id,method,truth,direction,confidence,correct,weight\n";
        std::size_t total_scored = 0;

        for (const Method method : methods) {
            std::vector<std::optional<MethodDecision>> decisions(pairs.size());
            std::vector<std::string> failures(pairs.size());
            parallel_for(pairs.size(), cfg.workers, [&](std::size_t p) {
                try {
                    decisions[p] = run_method(method, pairs[p].pair, params,
                                              root.child(p).value());
                } catch (const std::exception& e) {
                    failures[p] = e.what();
                }
            });

            std::vector<EvaluationRow> rows;
            std::size_t failed = 0;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const auto& lp = pairs[p];
                if (!decisions[p]) {
                    ++failed;
                    err << "warning: " << to_string(method) << " failed on " << lp.id << ": "
                        << failures[p] << '\n';
                    continue;
                }
                const auto& d = *decisions[p];
                const bool correct = d.direction == lp.truth;
                rows.push_back({lp.id, std::string(to_string(method)), correct, d.confidence,
                                lp.weight});
                per_pair.push_back({{"id", lp.id},
                                    {"method", std::string(to_string(method))},
                                    {"truth", std::string(to_string(lp.truth))},
                                    {"direction", std::string(to_string(d.direction))},
                                    {"confidence", d.confidence},
                                    {"correct", correct},
                                    {"weight", lp.weight}});
                pairs_csv << csv_escape(lp.id) << ',' << to_string(method) << ','
                          << to_string(lp.truth) << ',' << to_string(d.direction) << ','
                          << fmt(d.confidence) << ',' << (correct ? 1 : 0) << ','
                          << fmt(lp.weight) << '\n';
            }

            ojson entry;
            entry["method"] = std::string(to_string(method));
            entry["scored"] = rows.size();
            entry["failed"] = failed;
            if (rows.empty()) {
                entry["weighted_accuracy"] = nullptr;
                entry["curve"] = ojson::array();
                summary.push_back(entry);
                continue;
            }
            total_scored += rows.size();
            const auto curve = decision_curve(rows);
            const auto envelope = binomial_envelope(curve.size());
            entry["weighted_accuracy"] = weighted_accuracy(rows);
            ojson jc = ojson::array();
            for (std::size_t i = 0; i < curve.size(); ++i) {
                jc.push_back({{"k", curve[i].k},
                              {"accuracy", curve[i].accuracy},
                              {"envelope", envelope[i].bound}});
                curves_csv << to_string(method) << ',' << curve[i].k << ','
                           << fmt(curve[i].accuracy) << ',' << fmt(envelope[i].bound) << '\n';
            }
            entry["curve"] = std::move(jc);
            summary.push_back(entry);
        }

        if (cfg.output_format == OutputFormat::csv) {
            if (cfg.output_path) {
                const fs::path dir(*cfg.output_path);
                std::error_code ec;
                fs::create_directories(dir, ec);
                if (ec) throw IoError("cannot create " + dir.string());
                write_text(dir / "curves.csv", curves_csv.str());
                write_text(dir / "pairs.csv", pairs_csv.str());
                std::ostringstream acc;
                acc << "method,weighted_accuracy,scored,failed\n";
                for (const auto& e : summary) {
                    acc << e["method"].get<std::string>() << ','
                        << (e["weighted_accuracy"].is_null()
                                ? std::string()
                                : fmt(e["weighted_accuracy"].get<double>()))
                        << ',' << e["scored"].get<std::size_t>() << ','
                        << e["failed"].get<std::size_t>() << '\n';
                }
                write_text(dir / "accuracy.csv", acc.str());
                ojson cj;
                cj["config"] = config_json(cfg);
                write_text(dir / "config.json", dump(cj));
            } else {
                out << curves_csv.str();
            }
        } else {
            ojson j;
            j["config"] = config_json(cfg);
            j["pairs"] = pairs.size();
            j["methods"] = std::move(summary);
            j["records"] = std::move(per_pair);
            j["elapsed_ms"] = clock.elapsed_ms();
            emit(cfg, out, dump(j));
        }
        if (total_scored == 0) {
            err << "error: every pair failed for every method\n";
            return kExitDegenerate;
        }
        return kExitOk;
    });
}

int cmd_condind(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_config(effective_bijections(cfg) >= 1, "--bijections must be at least 1");
        const Stopwatch clock;
        CondIndOptions opts;
        opts.threshold = cfg.threshold;
        opts.frac_limit = cfg.frac_limit;
        opts.bijections = effective_bijections(cfg);
        opts.grid_size = cfg.grid_size;
        const Seed root(cfg.seed);

        struct Case {
            Triplet triplet;
            std::optional<bool> truly_independent;
        };
        std::vector<Case> cases;
        if (cfg.input_path) {
            const auto cols = load_columns(*cfg.input_path);
            if (cols.size() < 3)
                throw ParseError(*cfg.input_path, 1, "expected at least 3 columns (x y z)");
            const std::vector<std::vector<double>> z(cols.begin() + 2, cols.end());
            if (z.size() != 1)
                throw UnsupportedDimension("conditioning set must be one-dimensional, got " +
                                           std::to_string(z.size()));
            cases.push_back({Triplet{cols[0], cols[1], cols[2]}, std::nullopt});
        } else {
            Rng free_rng = root.child(0).rng();
            Rng edge_rng = root.child(1).rng();
            for (auto& t : generate_ci_triplets(cfg.n, cfg.pairs, false, free_rng))
                cases.push_back({std::move(t), true});
            for (auto& t : generate_ci_triplets(cfg.n, cfg.pairs, true, edge_rng))
                cases.push_back({std::move(t), false});
        }

        std::vector<CondIndResult> results(cases.size());
        parallel_for(cases.size(), cfg.workers, [&](std::size_t i) {
            results[i] = cond_independence_test(cases[i].triplet, opts, root.child({2, i}).value());
        });

        std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
        ojson items = ojson::array();
        std::ostringstream csv;
        csv << "index,truth,independent,exceed_fraction,max_value\n";
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& r = results[i];
            if (r.small_sample)
                err << "warning: triplet " << i << " has fewer than " << kCondIndMinSamples
                    << " observations\n";
            const double max_value = *std::max_element(r.values.begin(), r.values.end());
            ojson it;
            it["index"] = i;
            it["truth"] = cases[i].truly_independent
                              ? ojson(*cases[i].truly_independent ? "independent" : "dependent")
                              : ojson(nullptr);
            it["independent"] = r.independent;
            it["exceed_fraction"] = r.exceed_fraction;
            it["max_value"] = max_value;
            it["threshold"] = r.threshold;
            it["frac_limit"] = r.frac_limit;
            it["bijection_count"] = r.bijection_count;
            items.push_back(std::move(it));
            csv << i << ','
                << (cases[i].truly_independent
                        ? (*cases[i].truly_independent ? "independent" : "dependent")
                        : "")
                << ',' << (r.independent ? "true" : "false") << ',' << fmt(r.exceed_fraction)
                << ',' << fmt(max_value) << '\n';
            if (cases[i].truly_independent) {
                if (*cases[i].truly_independent) (r.independent ? tp : fn)++;
                else (r.independent ? fp : tn)++;
            }
        }

        if (cfg.output_format == OutputFormat::csv) {
            emit(cfg, out, csv.str());
        } else {
            ojson j;
            j["config"] = config_json(cfg);
            j["results"] = std::move(items);
            if (!cfg.input_path) {
                j["confusion"] = {{"true_positives", tp},
                                  {"false_negatives", fn},
                                  {"false_positives", fp},
                                  {"true_negatives", tn}};
            }
            j["elapsed_ms"] = clock.elapsed_ms();
            emit(cfg, out, dump(j));
        }
        return kExitOk;
    });
}

int cmd_robustness(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_config(effective_bijections(cfg) >= 1, "--bijections must be at least 1");
        const Stopwatch clock;
        std::string label;
        const auto pairs = dataset_for(cfg, label);
        const auto methods =
            parse_methods(cfg.methods.empty() ? "MQV-Alg1,IGCI,Strawman,RECI" : cfg.methods);

        RobustnessOptions opts;
        opts.num_bijections = effective_bijections(cfg);
        opts.params = method_params(cfg);
        opts.workers = cfg.workers;
        const auto table = robustness_study(pairs, methods, opts, cfg.seed);

        std::ostringstream csv;
        csv << "method,dataset,mean_entropy\n";
        ojson rows = ojson::array();
        for (const auto& e : table) {
            if (e.failed_decisions > 0)
                err << "warning: " << to_string(e.method) << ": " << e.failed_decisions
                    << " decisions failed or undecided and were excluded\n";
            csv << to_string(e.method) << ',' << csv_escape(label) << ',' << fmt(e.mean_entropy)
                << '\n';
            rows.push_back({{"method", std::string(to_string(e.method))},
                            {"dataset", label},
                            {"mean_entropy", std::isnan(e.mean_entropy) ? ojson(nullptr)
                                                                         : ojson(e.mean_entropy)},
                            {"pairs_used", e.pairs_used},
                            {"failed_decisions", e.failed_decisions}});
        }

        if (cfg.output_format == OutputFormat::csv) {
            emit(cfg, out, csv.str());
        } else {
            ojson j;
            j["config"] = config_json(cfg);
            j["table"] = std::move(rows);
            j["elapsed_ms"] = clock.elapsed_ms();
            emit(cfg, out, dump(j));
        }
        return kExitOk;
    });
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!cfg.output_path) throw IoError("--out directory is required for gen");
        SimConfig sc;
        sc.kind = sim_kind_from_string(cfg.kind);
        sc.n = cfg.n;
        sc.pairs = cfg.pairs;
        sc.seed = cfg.seed;
        const auto pairs = generate_dataset(sc);
        write_dataset(*cfg.output_path, pairs, {std::string(to_string(sc.kind)), sc.seed, sc.n});
        out << "wrote " << pairs.size() << " pairs to " << *cfg.output_path << '\n';
        return kExitOk;
    });
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
        case Command::infer: return cmd_infer(cfg, out, err);
        case Command::benchmark: return cmd_benchmark(cfg, out, err);
        case Command::condind: return cmd_condind(cfg, out, err);
        case Command::robustness: return cmd_robustness(cfg, out, err);
        case Command::gen: return cmd_gen(cfg, out, err);
    }
    return kExitIo;
}

}  // namespace mqv::cli
