#include "commands.hpp"

#include "mqv/datasets.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace mqv;
using namespace mqv::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_cubic(const fs::path& file, std::size_t n, double noise, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    SamplePair p;
    for (std::size_t i = 0; i < n; ++i) {
        p.x.push_back(nd(rng));
        p.y.push_back(std::pow(p.x.back(), 3) + noise * nd(rng));
    }
    write_pair_file(file, p);
    return file;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

std::string without_timing(const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    j.erase("elapsed_ms");
    return j.dump();
}

int shell(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(CliInfer, CubicFixtureGoesForward) {
    TempDir dir("mqv_cli_infer");
    RunConfig cfg;
    cfg.input_path = write_cubic(dir.path / "cubic.txt", 1000, 0.01, 1).string();
    cfg.M = 0;
    cfg.m = 200;
    const auto r = invoke(cfg);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["direction"], "XtoY");
    EXPECT_EQ(j["m"], 200);
    EXPECT_EQ(j["config"]["seed"], 0);
    EXPECT_TRUE(j.contains("elapsed_ms"));
}

TEST(CliInfer, ByteIdenticalAcrossRunsAndWorkers) {
    TempDir dir("mqv_cli_det");
    RunConfig cfg;
    cfg.input_path = write_cubic(dir.path / "p.txt", 300, 0.3, 2).string();
    cfg.m = 10;
    cfg.M = 4;
    cfg.seed = 77;
    const auto a = invoke(cfg);
    const auto b = invoke(cfg);
    cfg.workers = 4;
    const auto c = invoke(cfg);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(without_timing(a.out), without_timing(b.out));
    EXPECT_EQ(without_timing(a.out), without_timing(c.out));
    cfg.output_format = OutputFormat::csv;
    EXPECT_EQ(invoke(cfg).out, invoke(cfg).out);
}

TEST(CliInfer, ConstantColumnIsDegenerate) {
    TempDir dir("mqv_cli_const");
    std::ofstream(dir.path / "c.txt") << "1 5\n2 5\n3 5\n4 5\n5 5\n";
    RunConfig cfg;
    cfg.input_path = (dir.path / "c.txt").string();
    cfg.m = 5;
    cfg.M = 0;
    const auto r = invoke(cfg);
    EXPECT_EQ(r.code, kExitDegenerate);
    EXPECT_NE(r.err.find("degenerate input"), std::string::npos) << r.err;
}

TEST(CliInfer, MissingAndMalformedFiles) {
    RunConfig cfg;
    cfg.input_path = "/nonexistent/definitely/missing.txt";
    EXPECT_EQ(invoke(cfg).code, kExitIo);
    TempDir dir("mqv_cli_bad");
    std::ofstream(dir.path / "b.txt") << "1 2\n3 x\n";
    cfg.input_path = (dir.path / "b.txt").string();
    const auto r = invoke(cfg);
    EXPECT_EQ(r.code, kExitIo);
    EXPECT_NE(r.err.find(":2:"), std::string::npos) << r.err;
}

TEST(CliGen, WritesReproducibleDataset) {
    TempDir a("mqv_cli_gen_a"), b("mqv_cli_gen_b");
    RunConfig cfg;
    cfg.command = Command::gen;
    cfg.seed = 3;
    cfg.n = 100;
    cfg.output_path = a.path.string();
    ASSERT_EQ(invoke(cfg).code, 0);
    cfg.output_path = b.path.string();
    ASSERT_EQ(invoke(cfg).code, 0);
    std::size_t pair_files = 0;
    for (const auto& e : fs::directory_iterator(a.path)) {
        const auto name = e.path().filename().string();
        if (name.rfind("pair0", 0) == 0) ++pair_files;
        std::ifstream fa(e.path()), fb(b.path / name);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        EXPECT_EQ(sa.str(), sb.str()) << name;
    }
    EXPECT_EQ(pair_files, 100u);
    EXPECT_TRUE(fs::exists(a.path / "manifest.json"));
    cfg.output_path.reset();
    EXPECT_EQ(invoke(cfg).code, kExitIo);
}

TEST(CliBenchmark, DeterministicAcrossWorkers) {
    TempDir dir("mqv_cli_bench");
    SimConfig sc;
    sc.n = 150;
    sc.pairs = 6;
    sc.seed = 8;
    write_dataset(dir.path, generate_dataset(sc), {"SIM", 8, 150});
    RunConfig cfg;
    cfg.command = Command::benchmark;
    cfg.input_path = dir.path.string();
    cfg.m = 10;
    cfg.M = 3;
    cfg.methods = "MQV-Alg1,MQV-Alg2,IGCI,RECI";
    const auto a = invoke(cfg);
    cfg.workers = 3;
    const auto b = invoke(cfg);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(without_timing(a.out), without_timing(b.out));
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["methods"].size(), 4u);
    EXPECT_EQ(j["methods"][0]["curve"].size(), 6u);
    EXPECT_DOUBLE_EQ(j["methods"][0]["curve"][0]["envelope"].get<double>(), 1.0);
}

TEST(CliCondind, MultiColumnConditioningExitsTwo) {
    TempDir dir("mqv_cli_ci");
    std::ofstream f(dir.path / "t.txt");
    for (int i = 0; i < 60; ++i) f << i << ' ' << (i * 7 % 13) << ' ' << (i % 5) << ' ' << (i % 3) << '\n';
    f.close();
    RunConfig cfg;
    cfg.command = Command::condind;
    cfg.input_path = (dir.path / "t.txt").string();
    cfg.bijections = 5;
    const auto r = invoke(cfg);
    EXPECT_EQ(r.code, kExitDegenerate);
    EXPECT_NE(r.err.find("unsupported"), std::string::npos) << r.err;
}

TEST(CliCondind, SingleTripletFile) {
    TempDir dir("mqv_cli_ci1");
    Rng rng(3);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::ofstream f(dir.path / "t.txt");
    for (int i = 0; i < 300; ++i) {
        const double x = nd(rng);
        f << x << ' ' << x + 0.01 * nd(rng) << ' ' << nd(rng) << '\n';
    }
    f.close();
    RunConfig cfg;
    cfg.command = Command::condind;
    cfg.input_path = (dir.path / "t.txt").string();
    cfg.bijections = 50;
    const auto r = invoke(cfg);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["results"][0]["independent"].get<bool>());
    EXPECT_EQ(j["results"][0]["bijection_count"], 50);
}

TEST(CliRobustness, StrawmanColumnIsZero) {
    RunConfig cfg;
    cfg.command = Command::robustness;
    cfg.methods = "Strawman,IGCI";
    cfg.n = 100;
    cfg.pairs = 5;
    cfg.bijections = 4;
    cfg.output_format = OutputFormat::csv;
    const auto r = invoke(cfg);
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "method,dataset,mean_entropy");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("Strawman,", 0), 0u);
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
}

TEST(CliBinary, ExitCodes) {
    const std::string exe = MQV_CLI_PATH;
    TempDir dir("mqv_cli_bin");
    std::ofstream(dir.path / "c.txt") << "1 5\n2 5\n3 5\n4 5\n";
    EXPECT_EQ(shell(exe + " infer --input " + (dir.path / "c.txt").string() + " --M 0 --m 5"), 2);
    EXPECT_EQ(shell(exe + " infer --input " + (dir.path / "nope.txt").string()), 1);
    EXPECT_EQ(shell(exe + " infer --bogus-flag"), 1);
    EXPECT_EQ(shell(exe + " gen --out " + (dir.path / "g").string() + " --pairs 2 --n 100"), 0);
    EXPECT_EQ(shell(exe + " --help"), 0);
}
