#include "mqv/datasets.hpp"

#include "mqv/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mqv {

namespace fs = std::filesystem;

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

std::vector<double> standardized(std::span<const double> v) { return standardize(v).values; }

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_double(std::string_view tok, double& out) {
    // strtod accepts forms from_chars rejects on some toolchains (e.g. "+1.5").
    std::string s(tok);
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && !s.empty() && std::isfinite(out);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string meta_id(std::size_t index) {
    std::ostringstream os;
    os << std::setw(4) << std::setfill('0') << index;
    return os.str();
}

}  // namespace

std::string_view to_string(SimKind k) {
    switch (k) {
        case SimKind::SIM: return "SIM";
        case SimKind::SIM_c: return "SIM-c";
        case SimKind::SIM_ln: return "SIM-ln";
        case SimKind::SIM_G: return "SIM-G";
    }
    return "SIM";
}

SimKind sim_kind_from_string(std::string_view name) {
    const auto u = upper(name);
    if (u == "SIM") return SimKind::SIM;
    if (u == "SIM_C") return SimKind::SIM_c;
    if (u == "SIM_LN") return SimKind::SIM_ln;
    if (u == "SIM_G") return SimKind::SIM_G;
    throw std::invalid_argument("unknown dataset kind: " + std::string(name));
}

void validate(const SimConfig& cfg) {
    if (cfg.n < 100) throw std::invalid_argument("simulated pairs need n >= 100");
    if (cfg.pairs < 1) throw std::invalid_argument("need at least one pair");
}

RandomMechanism::RandomMechanism(Rng& rng) {
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t r = 1; r <= kTerms; ++r) {
        amplitude_.push_back(normal(rng) / static_cast<double>(r));
        frequency_.push_back(freq(rng));
        phase_.push_back(phase(rng));
    }
}

double RandomMechanism::operator()(double x) const {
    double s = 0.0;
    for (std::size_t r = 0; r < amplitude_.size(); ++r)
        s += amplitude_[r] * std::sin(frequency_[r] * x + phase_[r]);
    return s;
}

std::vector<double> RandomMechanism::apply_unit_variance(std::span<const double> v) const {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [&](double a) { return (*this)(a); });
    const double sd = sample_std(out);
    if (sd > 0.0)
        for (double& a : out) a /= sd;
    return out;
}

std::vector<double> sample_gaussian_mixture(std::size_t n, Rng& rng) {
    std::uniform_int_distribution<int> components(1, 5);
    std::uniform_real_distribution<double> mean(-2.0, 2.0);
    std::uniform_real_distribution<double> sd(0.5, 1.5);
    const int k = components(rng);
    std::vector<double> means(k);
    std::vector<double> sds(k);
    for (int c = 0; c < k; ++c) {
        means[c] = mean(rng);
        sds[c] = sd(rng);
    }
    std::uniform_int_distribution<int> pick(0, k - 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) {
        const int c = pick(rng);
        v = means[c] + sds[c] * normal(rng);
    }
    return out;
}

LabeledPair generate_pair(const SimConfig& cfg, Rng& rng) {
    validate(cfg);
    const std::size_t n = cfg.n;
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> cause;
    if (cfg.kind == SimKind::SIM_G) {
        cause.resize(n);
        for (auto& v : cause) v = normal(rng);
    } else {
        cause = sample_gaussian_mixture(n, rng);
    }

    std::vector<double> confounder;
    if (cfg.kind == SimKind::SIM_c) {
        confounder.resize(n);
        for (auto& v : confounder) v = normal(rng);
        const RandomMechanism into_cause(rng);
        const auto push = into_cause.apply_unit_variance(confounder);
        const auto base = standardized(cause);
        for (std::size_t i = 0; i < n; ++i) cause[i] = base[i] + cfg.confounder_weight * push[i];
    }
    cause = standardized(cause);

    const RandomMechanism mechanism(rng);
    std::vector<double> effect = mechanism.apply_unit_variance(cause);

    const double noise_sd = cfg.kind == SimKind::SIM_ln
                                ? std::uniform_real_distribution<double>(0.01, 0.1)(rng)
                                : std::uniform_real_distribution<double>(0.2, 0.8)(rng);
    for (auto& v : effect) v += noise_sd * normal(rng);

    if (cfg.kind == SimKind::SIM_c) {
        const RandomMechanism into_effect(rng);
        const auto push = into_effect.apply_unit_variance(confounder);
        for (std::size_t i = 0; i < n; ++i) effect[i] += cfg.confounder_weight * push[i];
    }

    LabeledPair out;
    if (std::bernoulli_distribution(0.5)(rng)) {
        out.pair = {std::move(effect), std::move(cause)};
        out.truth = Direction::YtoX;
    } else {
        out.pair = {std::move(cause), std::move(effect)};
        out.truth = Direction::XtoY;
    }
    out.weight = 1.0;
    return out;
}

std::vector<LabeledPair> generate_dataset(const SimConfig& cfg) {
    validate(cfg);
    const Seed root(cfg.seed);
    std::vector<LabeledPair> out;
    out.reserve(cfg.pairs);
    for (std::size_t p = 0; p < cfg.pairs; ++p) {
        Rng rng = root.child(p).rng();
        auto lp = generate_pair(cfg, rng);
        lp.id = "pair" + meta_id(p + 1);
        out.push_back(std::move(lp));
    }
    return out;
}

std::vector<Triplet> generate_ci_triplets(std::size_t n, std::size_t pairs, bool with_edge,
                                          Rng& rng, double edge_weight) {
    if (n < 3) throw std::invalid_argument("triplets need n >= 3");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> noise_sd(0.2, 0.5);

    std::vector<Triplet> out;
    out.reserve(pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
        Triplet t;
        t.z = standardized(sample_gaussian_mixture(n, rng));
        const RandomMechanism f1(rng);
        const RandomMechanism f2(rng);
        t.x = f1.apply_unit_variance(t.z);
        t.y = f2.apply_unit_variance(t.z);
        const double sx = noise_sd(rng);
        const double sy = noise_sd(rng);
        for (auto& v : t.x) v += sx * normal(rng);
        for (auto& v : t.y) v += sy * normal(rng);

        if (with_edge) {
            const RandomMechanism g(rng);
            const bool x_causes_y = std::bernoulli_distribution(0.5)(rng);
            const auto& parent = x_causes_y ? t.x : t.y;
            const auto push = g.apply_unit_variance(standardized(parent));
            auto& child = x_causes_y ? t.y : t.x;
            for (std::size_t i = 0; i < n; ++i) child[i] += edge_weight * push[i];
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<std::vector<double>> load_columns(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());

    std::vector<std::vector<double>> cols;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto toks = split_ws(line);
        if (toks.empty() || toks.front().front() == '#') continue;
        if (cols.empty()) cols.resize(toks.size());
        if (toks.size() != cols.size())
            throw ParseError(file.string(), lineno,
                             "expected " + std::to_string(cols.size()) + " columns, found " +
                                 std::to_string(toks.size()));
        for (std::size_t c = 0; c < toks.size(); ++c) {
            double v;
            if (!parse_double(toks[c], v))
                throw ParseError(file.string(), lineno,
                                 "malformed number '" + std::string(toks[c]) + "'");
            cols[c].push_back(v);
        }
    }
    if (in.bad()) throw IoError("read error on " + file.string());
    return cols;
}

std::vector<LabeledPair> load_cep_directory(const fs::path& dir) {
    const fs::path meta = dir / "pairmeta.txt";
    std::ifstream in(meta);
    if (!in) throw MissingMetadata("missing " + meta.string());

    std::vector<LabeledPair> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = split_ws(line);
        if (toks.empty() || toks.front().front() == '#') continue;
        if (toks.size() != 6)
            throw ParseError(meta.string(), lineno, "expected 6 fields");
        int fields[4];
        for (int k = 0; k < 4; ++k) {
            const auto tok = toks[k + 1];
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), fields[k]);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || fields[k] < 1)
                throw ParseError(meta.string(), lineno, "bad column index '" + std::string(tok) + "'");
        }
        double weight;
        if (!parse_double(toks[5], weight) || !(weight > 0.0))
            throw ParseError(meta.string(), lineno, "bad weight '" + std::string(toks[5]) + "'");

        const int cause_first = fields[0], cause_last = fields[1];
        const int effect_first = fields[2], effect_last = fields[3];
        if (cause_first != cause_last || effect_first != effect_last) continue;
        if (cause_first == effect_first)
            throw ParseError(meta.string(), lineno, "cause and effect share a column");

        const std::string id = "pair" + std::string(toks[0]);
        const fs::path data = dir / (id + ".txt");
        if (!fs::exists(data)) throw MissingMetadata("missing data file " + data.string());
        const auto cols = load_columns(data);
        const auto need = static_cast<std::size_t>(std::max(cause_first, effect_first));
        if (cols.size() < need)
            throw ParseError(data.string(), 1, "fewer columns than pairmeta requires");

        const int first = std::min(cause_first, effect_first);
        const int second = std::max(cause_first, effect_first);
        LabeledPair lp;
        lp.pair = {cols[first - 1], cols[second - 1]};
        lp.truth = cause_first < effect_first ? Direction::XtoY : Direction::YtoX;
        lp.weight = weight;
        lp.id = id;
        out.push_back(std::move(lp));
    }
    return out;
}

void write_pair_file(const fs::path& file, const SamplePair& pair) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    for (std::size_t i = 0; i < pair.size(); ++i)
        out << format_double(pair.x[i]) << ' ' << format_double(pair.y[i]) << '\n';
    if (!out) throw IoError("write failed for " + file.string());
}

void write_dataset(const fs::path& dir, const std::vector<LabeledPair>& pairs,
                   const DatasetInfo& info) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    nlohmann::ordered_json manifest;
    manifest["kind"] = info.kind;
    manifest["seed"] = info.seed;
    manifest["n"] = info.n;
    manifest["pairs"] = pairs.size();
    auto& entries = manifest["entries"] = nlohmann::ordered_json::array();

    std::ofstream meta(dir / "pairmeta.txt");
    if (!meta) throw IoError("cannot write " + (dir / "pairmeta.txt").string());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto& lp = pairs[p];
        const std::string id = lp.id.empty() ? "pair" + meta_id(p + 1) : lp.id;
        write_pair_file(dir / (id + ".txt"), lp.pair);
        const std::string num = id.rfind("pair", 0) == 0 ? id.substr(4) : id;
        meta << num << (lp.truth == Direction::YtoX ? " 2 2 1 1 " : " 1 1 2 2 ")
             << format_double(lp.weight) << '\n';
        entries.push_back({{"id", id},
                           {"file", id + ".txt"},
                           {"truth", std::string(to_string(lp.truth))},
                           {"weight", lp.weight}});
    }
    if (!meta) throw IoError("write failed for pairmeta.txt");

    std::ofstream mf(dir / "manifest.json");
    if (!mf) throw IoError("cannot write manifest.json");
    mf << manifest.dump(2) << '\n';
}

std::vector<LabeledPair> load_manifest(const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw MissingMetadata("missing manifest " + manifest.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(manifest.string(), 1, e.what());
    }
    const fs::path base = manifest.parent_path();
    std::vector<LabeledPair> out;
    try {
        for (const auto& e : j.at("entries")) {
            LabeledPair lp;
            lp.id = e.at("id").get<std::string>();
            lp.truth = direction_from_string(e.at("truth").get<std::string>());
            lp.weight = e.value("weight", 1.0);
            const fs::path file = base / e.at("file").get<std::string>();
            const auto cols = load_columns(file);
            if (cols.size() != 2) throw ParseError(file.string(), 1, "expected 2 columns");
            lp.pair = {cols[0], cols[1]};
            out.push_back(std::move(lp));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(manifest.string(), 1, e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(manifest.string(), 1, e.what());
    }
    return out;
}

std::vector<LabeledPair> load_dataset(const fs::path& path) {
    if (fs::is_directory(path)) {
        if (fs::exists(path / "manifest.json")) return load_manifest(path / "manifest.json");
        return load_cep_directory(path);
    }
    if (!fs::exists(path)) throw IoError("no such file or directory: " + path.string());
    return load_manifest(path);
}

}  // namespace mqv
