#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pagen_cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "pagen");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = pagen::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count_lines(const fs::path& path) {
    const std::string text = slurp(path);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        root_ = fs::temp_directory_path() / (std::string("pagen-cli-") + info->name());
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    std::string dir(const std::string& name) const { return (root_ / name).string(); }

    fs::path root_;
};

} // namespace

TEST_F(Cli, GeneratePriceWritesRunDirectory) {
    const auto r = run_cli({"generate", "--model", "price", "--n", "1000", "--fitness", "const:1", "--seed", "7",
                            "--out", dir("price")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(root_ / "price" / "edges.tsv"), 999u);
    const json manifest = json::parse(slurp(root_ / "price" / "manifest.json"));
    EXPECT_EQ(manifest["seed"], 7);
    EXPECT_EQ(manifest["result"]["edges"], 999);
    const auto& params = manifest["parameters"];
    for (const char* key : {"model", "n", "p", "fitness", "fitness_out", "pref", "pref_out", "index", "seed",
                            "seed_nodes", "simple", "literal_pseudocode", "edges"})
        EXPECT_TRUE(params.contains(key)) << key;
    EXPECT_TRUE(fs::exists(root_ / "price" / "degree_in.csv"));
    EXPECT_TRUE(fs::exists(root_ / "price" / "degree_out.csv"));
}

TEST_F(Cli, GenerateIsDeterministic) {
    for (const char* name : {"a", "b"}) {
        const auto r = run_cli({"generate", "--model", "krapivsky", "--n", "10000", "--p", "0.5", "--seed", "7",
                                "--out", dir(name)});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    for (const char* file : {"edges.tsv", "degree_in.csv", "degree_out.csv"})
        EXPECT_EQ(slurp(root_ / "a" / file), slurp(root_ / "b" / file)) << file;
}

TEST_F(Cli, RerunFromManifestIsByteIdentical) {
    ASSERT_EQ(run_cli({"generate", "--n", "5e3", "--fitness", "pareto:2.5", "--pref", "power:alpha=1.1", "--seed",
                       "11", "--out", dir("first")})
                  .code,
              0);
    const auto r = run_cli({"generate", "--config", dir("first") + "/manifest.json", "--out", dir("second")});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* file : {"edges.tsv", "degree_in.csv", "degree_out.csv"})
        EXPECT_EQ(slurp(root_ / "first" / file), slurp(root_ / "second" / file)) << file;
}

TEST_F(Cli, RejectsInvalidParameters) {
    auto r = run_cli({"generate", "--model", "krapivsky", "--fitness", "pareto:0.5", "--out", dir("x")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("pareto"), std::string::npos);
    EXPECT_EQ(run_cli({"generate", "--p", "1.5", "--out", dir("x")}).code, 1);
    EXPECT_EQ(run_cli({"generate", "--index", "splay", "--out", dir("x")}).code, 1);
    EXPECT_EQ(run_cli({"generate", "--index", "array", "--pref", "power:alpha=2", "--n", "100", "--out", dir("x")})
                  .code,
              1);
    EXPECT_EQ(run_cli({"generate", "--bogus"}).code, 1);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
    EXPECT_EQ(run_cli({}).code, 1);
}

TEST_F(Cli, EdgesFlagControlsEdgeFile) {
    ASSERT_EQ(run_cli({"generate", "--n", "1e3", "--edges", "off", "--out", dir("off")}).code, 0);
    EXPECT_FALSE(fs::exists(root_ / "off" / "edges.tsv"));
    EXPECT_TRUE(fs::exists(root_ / "off" / "degree_in.csv"));
}

TEST_F(Cli, AnalyzeStar) {
    {
        std::ofstream f(root_ / "star.tsv");
        f << "1\t0\n2\t0\n3\t0\n4\t0\n";
    }
    const auto r = run_cli({"analyze", "--edges", dir("star.tsv"), "--out", dir("star")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json stats = json::parse(r.out);
    EXPECT_EQ(stats["star_ratio"].get<double>(), 1.0);
    EXPECT_EQ(stats, json::parse(slurp(root_ / "star" / "stats.json")));
    EXPECT_TRUE(fs::exists(root_ / "star" / "manifest.json"));
}

TEST_F(Cli, AnalyzeLargePriceRun) {
    ASSERT_EQ(run_cli({"generate", "--model", "price", "--n", "1e6", "--fitness", "const:1", "--seed", "3", "--out",
                       dir("big")})
                  .code,
              0);
    const auto r = run_cli({"analyze", "--edges", dir("big") + "/edges.tsv", "--out", dir("stats")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json stats = json::parse(r.out);
    ASSERT_TRUE(stats.contains("alpha_in"));
    EXPECT_NEAR(stats["alpha_in"].get<double>(), 3.0, 0.3);
    EXPECT_GE(stats["r2"]["in"].get<double>(), 0.98);

    const auto h = run_cli({"analyze", "--in-hist", dir("big") + "/degree_in.csv", "--out", dir("hist")});
    ASSERT_EQ(h.code, 0) << h.err;
    EXPECT_EQ(json::parse(h.out)["alpha_in"], stats["alpha_in"]);
}

TEST_F(Cli, AnalyzeErrors) {
    { std::ofstream f(root_ / "empty.tsv"); }
    EXPECT_EQ(run_cli({"analyze", "--edges", dir("empty.tsv"), "--out", dir("e")}).code, 2);
    {
        std::ofstream f(root_ / "bad.tsv");
        f << "0\t1\n1\t2\nfoo bar\n";
    }
    const auto r = run_cli({"analyze", "--edges", dir("bad.tsv"), "--out", dir("b")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"analyze", "--edges", dir("missing.tsv"), "--out", dir("m")}).code, 2);
    EXPECT_EQ(run_cli({"analyze", "--out", dir("n")}).code, 1);
}

TEST_F(Cli, BenchMatrix) {
    const auto r = run_cli(
        {"bench", "--indexes", "heap,naive", "--sizes", "1e4,2e4", "--reps", "2", "--out", dir("bench")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream csv(root_ / "bench" / "bench.csv");
    const auto rows = pagen::read_bench_csv(csv);
    EXPECT_EQ(rows.size(), 4u);
    std::istringstream printed(r.out);
    EXPECT_EQ(pagen::read_bench_csv(printed).size(), 4u);
    EXPECT_TRUE(fs::exists(root_ / "bench" / "manifest.json"));
    EXPECT_EQ(run_cli({"bench", "--sizes", "2e4,1e4", "--out", dir("bad")}).code, 1);
}

TEST_F(Cli, SweepAlpha) {
    const auto r = run_cli({"sweep-alpha", "--alphas", "1.0,2.0", "--reps", "3", "--n", "2e3", "--out", dir("sweep")});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(root_ / "sweep" / "sweep.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,mean_ratio,ci95_lo,ci95_hi,replications");
    EXPECT_EQ(count_lines(root_ / "sweep" / "sweep.csv"), 3u);
    EXPECT_EQ(run_cli({"sweep-alpha", "--reps", "1", "--n", "100", "--out", dir("one")}).code, 1);
}

TEST(CliHelpers, ParseCount) {
    EXPECT_EQ(pagen::cli::parse_count("1e7", "--n"), 10'000'000u);
    EXPECT_EQ(pagen::cli::parse_count("2.5e3", "--n"), 2500u);
    EXPECT_EQ(pagen::cli::parse_count("42", "--n"), 42u);
    EXPECT_THROW(pagen::cli::parse_count("1.5", "--n"), pagen::ParameterError);
    EXPECT_THROW(pagen::cli::parse_count("-3", "--n"), pagen::ParameterError);
    EXPECT_THROW(pagen::cli::parse_count("ten", "--n"), pagen::ParameterError);
}
