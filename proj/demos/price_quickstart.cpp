// Generates a Price network with the heap index and prints its fitted
// in-degree exponent next to the rate-equation value 2 + lambda.
#include <cstdio>
#include <cstdlib>

#include "pagen/pagen.hpp"

int main(int argc, char** argv) {
    pagen::ModelConfig config;
    config.model = pagen::ModelKind::price;
    config.n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100000;
    config.lambda_model = pagen::FitnessModel::constant(1.0);
    config.seed = 42;

    const auto result = pagen::generate(config);
    const auto stats = pagen::describe(pagen::degree_histogram(result.graph, pagen::DegreeAttribute::in));

    std::printf("nodes %zu  edges %llu  %.3f s\n", result.graph.node_count(),
                static_cast<unsigned long long>(result.graph.edge_count()), result.wall_seconds);
    if (stats.fit)
        std::printf("in-degree exponent %.3f (r2 %.4f), expected 3.0\n", stats.fit->exponent, stats.fit->r2);
    return 0;
}
