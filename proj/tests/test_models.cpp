#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "pagen/analysis.hpp"
#include "pagen/models.hpp"

using namespace pagen;

namespace {

ModelConfig price_config(std::uint64_t n, double lambda = 1.0, std::uint64_t seed = 1) {
    ModelConfig c;
    c.model = ModelKind::price;
    c.n = n;
    c.lambda_model = FitnessModel::constant(lambda);
    c.seed = seed;
    return c;
}

} // namespace

TEST(Price, SeedOnlyRunIsUnchanged) {
    auto config = price_config(3);
    config.seed_graph_size = 3;
    const auto result = generate(config);
    EXPECT_EQ(result.graph.node_count(), 3u);
    EXPECT_EQ(result.graph.edge_count(), 0u);
    EXPECT_EQ(result.iterations, 0u);
}

TEST(Price, OneOutEdgePerNewNode) {
    const auto result = generate(price_config(10'000));
    const Graph& g = result.graph;
    EXPECT_EQ(g.node_count(), 10'000u);
    EXPECT_EQ(g.edge_count(), 9'999u);
    EXPECT_EQ(g.node(0).out_degree, 0u);
    for (NodeId v = 1; v < g.node_count(); ++v)
        ASSERT_EQ(g.node(v).out_degree, 1u);
}

TEST(Price, EdgeCountWithLargerSeedGraph) {
    auto config = price_config(2000);
    config.seed_graph_size = 5;
    const auto result = generate(config);
    EXPECT_EQ(result.graph.edge_count(), 1995u);
    EXPECT_EQ(result.iterations, 1995u);
}

TEST(Price, InDegreeExponentNearRateEquationValue) {
    const auto result = generate(price_config(1'000'000, 1.0, 3));
    const auto stats = describe(degree_histogram(result.graph, DegreeAttribute::in));
    ASSERT_TRUE(stats.fit);
    EXPECT_NEAR(stats.fit->exponent, oracle::price_in_exponent(1.0), 0.3);
    EXPECT_GE(stats.fit->r2, 0.98);
}

TEST(Krapivsky, ProbabilityOneReproducesPrice) {
    auto price = price_config(5000, 2.0, 17);
    auto krap = price;
    krap.model = ModelKind::krapivsky;
    krap.p = 1.0;
    const auto a = generate(price, IndexKind::heap, GraphOutput{true, nullptr});
    const auto b = generate(krap, IndexKind::heap, GraphOutput{true, nullptr});
    EXPECT_EQ(a.graph.edges(), b.graph.edges());
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Krapivsky, IterationsAverageNOverP) {
    ModelConfig config;
    config.n = 10'000;
    config.p = 0.5;
    double sum = 0.0;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        config.seed = 1000 + rep;
        sum += static_cast<double>(generate(config).iterations) / static_cast<double>(config.n);
    }
    EXPECT_NEAR(sum / 20.0, 2.0, 0.1);
}

TEST(Krapivsky, StructuralCounts) {
    ModelConfig config;
    config.n = 20'000;
    config.seed_graph_size = 4;
    const auto result = generate(config);
    EXPECT_EQ(result.graph.node_count(), 20'000u);
    EXPECT_EQ(result.graph.edge_count(), result.iterations);
    EXPECT_EQ(result.node_steps, 20'000u - 4u);
    EXPECT_GE(result.iterations, config.n - config.seed_graph_size);
}

TEST(Krapivsky, SameSeedSameEdgeStream) {
    ModelConfig config;
    config.n = 20'000;
    config.seed = 5;
    config.lambda_model = FitnessModel::pareto(3.5);
    config.mu_model = FitnessModel::truncated_normal(1.8);
    for (auto kind : {IndexKind::heap, IndexKind::treap_rand, IndexKind::treap_mass}) {
        const auto a = generate(config, kind, GraphOutput{true, nullptr});
        const auto b = generate(config, kind, GraphOutput{true, nullptr});
        EXPECT_EQ(a.graph.edges(), b.graph.edges()) << to_string(kind);
    }
    auto other = config;
    other.seed = 6;
    EXPECT_NE(generate(config, IndexKind::heap, GraphOutput{true, nullptr}).graph.edges(),
              generate(other, IndexKind::heap, GraphOutput{true, nullptr}).graph.edges());
}

template <class Index>
void expect_coherent(const ModelConfig& config) {
    Rng rng(config.seed);
    Generator<Index> generator(config, rng);
    generator.run();
    EXPECT_LT(generator.coherence_deviation(), 1e-12) << to_string(Index::kind);
    EXPECT_TRUE(generator.in_index().validate().ok());
    if (config.model == ModelKind::krapivsky)
        EXPECT_TRUE(generator.out_index().validate().ok());
}

TEST(Models, IndexMassesMatchGraphDegrees) {
    ModelConfig config;
    config.n = 100'000;
    config.lambda_model = FitnessModel::pareto(2.0);
    config.mu_model = FitnessModel::truncated_normal(1.8);
    config.pref_in = PreferenceFunction::power(1.3);
    expect_coherent<HeapIndex>(config);
    expect_coherent<RandomTreapIndex>(config);
    expect_coherent<MassTreapIndex>(config);

    ModelConfig linear;
    linear.n = 100'000;
    expect_coherent<RepeatArrayIndex>(linear);
    linear.n = 5'000;
    expect_coherent<NaiveIndex>(linear);

    auto price = price_config(50'000, 1.5);
    expect_coherent<HeapIndex>(price);
    expect_coherent<RepeatArrayIndex>(price);
}

TEST(Models, StarRegimeRootIsHeaviestNode) {
    ModelConfig config;
    config.n = 20'000;
    config.lambda_model = FitnessModel::constant(1.0);
    config.mu_model = FitnessModel::constant(1.0);
    config.pref_in = PreferenceFunction::power(2.0);
    config.pref_out = PreferenceFunction::power(2.0);
    Rng rng(8);
    Generator<HeapIndex> generator(config, rng);
    generator.run();
    for (const HeapIndex* index : {&generator.in_index(), &generator.out_index()}) {
        NodeId heaviest = 0;
        for (NodeId v = 0; v < generator.graph().node_count(); ++v)
            if (index->mass(v) > index->mass(heaviest))
                heaviest = v;
        EXPECT_EQ(index->most_probable(), heaviest);
    }
}

TEST(Models, SimpleModeHasNoSelfLoops) {
    ModelConfig config;
    config.n = 20'000;
    config.p = 0.3;
    config.simple = true;
    const auto result = generate(config, IndexKind::heap, GraphOutput{true, nullptr});
    for (const Edge& e : result.graph.edges())
        ASSERT_NE(e.tail, e.head);

    config.simple = false;
    const auto loose = generate(config, IndexKind::heap, GraphOutput{true, nullptr});
    EXPECT_TRUE(std::any_of(loose.graph.edges().begin(), loose.graph.edges().end(),
                            [](const Edge& e) { return e.tail == e.head; }));
}

TEST(Models, LiteralPseudocodeSwapsEdgeStepRoles) {
    ModelConfig config;
    config.n = 50'000;
    config.p = 0.5;
    config.lambda_model = FitnessModel::constant(1.0);
    config.mu_model = FitnessModel::constant(1.0);
    const auto prose = generate(config);
    config.literal_pseudocode = true;
    const auto literal = generate(config);
    EXPECT_EQ(literal.graph.node_count(), config.n);
    EXPECT_EQ(literal.graph.edge_count(), literal.iterations);
    // Tails drawn by in-degree concentrate out-degree on in-degree hubs:
    // the busiest tail is far busier than under out-degree preference.
    EXPECT_NE(prose.graph.max_out_degree(), literal.graph.max_out_degree());
}

TEST(ModelConfig, RejectsInvalidParameters) {
    ModelConfig c;
    c.p = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c.p = 1.5;
    EXPECT_THROW(c.validate(), ConfigError);
    c = ModelConfig{};
    c.seed_graph_size = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = ModelConfig{};
    c.n = 3;
    c.seed_graph_size = 4;
    EXPECT_THROW(c.validate(), ConfigError);
    c = ModelConfig{};
    c.model = ModelKind::price;
    c.lambda_model = FitnessModel::constant(0.0);
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_THROW(generate(c), ConfigError);
    c = ModelConfig{};
    c.mu_model = FitnessModel::constant(0.0);
    EXPECT_THROW(c.validate(), ConfigError);
    c.p = 1.0;
    EXPECT_NO_THROW(c.validate());
}

TEST(ModelConfig, ArrayIndexNeedsUnitLinearConstantFitness) {
    ModelConfig c;
    c.n = 100;
    EXPECT_NO_THROW(generate(c, IndexKind::array));
    c.pref_in = PreferenceFunction::power(1.2);
    EXPECT_THROW(generate(c, IndexKind::array), ConfigError);
    c = ModelConfig{};
    c.n = 100;
    c.mu_model = FitnessModel::pareto(1.8);
    EXPECT_THROW(generate(c, IndexKind::array), ConfigError);
    c.model = ModelKind::price; // out-degree fitness unused
    EXPECT_NO_THROW(generate(c, IndexKind::array));
}

TEST(ModelConfig, IterationCap) {
    ModelConfig c;
    c.n = 1000;
    c.p = 0.5;
    EXPECT_EQ(c.iteration_cap(), 200'000u);
    c.model = ModelKind::price;
    EXPECT_EQ(c.iteration_cap(), 100'000u);
}
