#include <gtest/gtest.h>

#include <sstream>

#include "pagen/bench.hpp"

using namespace pagen;

TEST(Bench, MatrixSize) {
    BenchPlan plan;
    plan.kinds = {IndexKind::heap, IndexKind::naive};
    plan.sizes = {10'000, 20'000};
    plan.replications = 2;
    const auto results = run_bench(plan);
    ASSERT_EQ(results.size(), 4u);
    EXPECT_EQ(results[0].kind, IndexKind::heap);
    EXPECT_EQ(results[1].kind, IndexKind::naive);
    EXPECT_EQ(results[2].n, 20'000u);
    for (const auto& r : results) {
        EXPECT_EQ(r.seconds.size(), 2u);
        EXPECT_GT(r.mean_seconds, 0.0);
        EXPECT_GE(r.ci95_seconds, 0.0);
        EXPECT_GT(r.memory_bytes_estimate, 0u);
    }
}

TEST(Bench, CsvRoundTrip) {
    std::vector<BenchResult> results(3);
    results[0] = {IndexKind::heap, 100000, 3, 0.125, 0.0125, 0, {}};
    results[1] = {IndexKind::treap_rand, 200000, 3, 0.3333333, 1e-4, 0, {}};
    results[2] = {IndexKind::treap_mass, 400000, 5, 12.5, 0.0, 0, {}};
    std::stringstream csv;
    write_bench_csv(csv, results);
    const auto back = read_bench_csv(csv);
    ASSERT_EQ(back.size(), results.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].kind, results[i].kind);
        EXPECT_EQ(back[i].n, results[i].n);
        EXPECT_EQ(back[i].replications, results[i].replications);
        EXPECT_NEAR(back[i].mean_seconds, results[i].mean_seconds, 1e-8 * results[i].mean_seconds);
        EXPECT_NEAR(back[i].ci95_seconds, results[i].ci95_seconds, 1e-12);
    }
    std::stringstream rewritten;
    write_bench_csv(rewritten, back);
    std::stringstream original;
    write_bench_csv(original, results);
    EXPECT_EQ(rewritten.str(), original.str());
}

TEST(Bench, MalformedCsv) {
    std::stringstream bad_header("kind,n\n");
    EXPECT_THROW(read_bench_csv(bad_header), ParseError);
    std::stringstream bad_row("index_kind,n,mean_seconds,ci95_seconds,replications\nheap,10,0.1\n");
    try {
        read_bench_csv(bad_row);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Bench, RejectsBadPlans) {
    BenchPlan plan;
    plan.sizes = {2000, 1000};
    EXPECT_THROW(run_bench(plan), ParameterError);
    plan.sizes = {1000};
    plan.replications = 0;
    EXPECT_THROW(run_bench(plan), ParameterError);
}

TEST(Bench, CellEdgeStreamsRepeat) {
    BenchPlan plan;
    plan.base.seed = 40;
    plan.replications = 3;
    for (IndexKind kind : {IndexKind::heap, IndexKind::treap_rand, IndexKind::treap_mass}) {
        for (std::size_t r = 0; r < plan.replications; ++r) {
            ModelConfig config = plan.base;
            config.n = 10'000;
            config.seed = plan.base.seed + r;
            const auto a = generate(config, kind, GraphOutput{true, nullptr});
            const auto b = generate(config, kind, GraphOutput{true, nullptr});
            ASSERT_EQ(a.graph.edges(), b.graph.edges());
        }
    }
}

TEST(Bench, NaiveSlowerThanHeap) {
    BenchPlan plan;
    plan.kinds = {IndexKind::heap, IndexKind::naive};
    plan.sizes = {100'000};
    plan.replications = 1;
    plan.warmup = false;
    plan.base.model = ModelKind::price;
    plan.base.lambda_model = FitnessModel::constant(1.0);
    const auto results = run_bench(plan);
    EXPECT_LT(results[0].mean_seconds, results[1].mean_seconds);
}

TEST(Bench, MemoryEstimateScales) {
    ModelConfig config;
    config.n = 1000;
    const auto small = memory_estimate(IndexKind::heap, config);
    config.n = 2000;
    EXPECT_EQ(memory_estimate(IndexKind::heap, config), 2 * small);
    config.model = ModelKind::price;
    EXPECT_LT(memory_estimate(IndexKind::heap, config), 2 * small);
}
