#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pagen/graph.hpp"
#include "pagen/index.hpp"
#include "pagen/preference.hpp"
#include "pagen/rng.hpp"

namespace pagen {

enum class ModelKind { price, krapivsky };

inline std::string_view to_string(ModelKind kind) { return kind == ModelKind::price ? "price" : "krapivsky"; }

inline ModelKind parse_model_kind(std::string_view text) {
    if (text == "price")
        return ModelKind::price;
    if (text == "krapivsky")
        return ModelKind::krapivsky;
    throw ParameterError("unknown model '" + std::string(text) + "' (expected price or krapivsky)");
}

struct ModelConfig {
    ModelKind model = ModelKind::krapivsky;
    std::uint64_t n = 10000;
    double p = 0.8; // node-step probability; krapivsky only
    FitnessModel lambda_model = FitnessModel::constant(3.5); // in-degree fitness
    FitnessModel mu_model = FitnessModel::constant(1.8);     // out-degree fitness; krapivsky only
    PreferenceFunction pref_in = PreferenceFunction::linear(1.0);
    PreferenceFunction pref_out = PreferenceFunction::linear(1.0);
    std::uint64_t seed = 1;
    std::uint64_t seed_graph_size = 1;
    bool simple = false;             // resample edge-step pairs until tail != head
    bool literal_pseudocode = false; // edge step: tail by in-degree, head by out-degree

    /// Upper bound on loop iterations before generation is aborted.
    std::uint64_t iteration_cap() const {
        const double p_eff = model == ModelKind::price ? 1.0 : p;
        return static_cast<std::uint64_t>(100.0 * static_cast<double>(n) / p_eff);
    }

    void validate() const {
        if (seed_graph_size < 1)
            throw ConfigError("seed graph must contain at least one node");
        if (n < seed_graph_size)
            throw ConfigError("n (" + std::to_string(n) + ") must be >= seed graph size (" +
                              std::to_string(seed_graph_size) + ")");
        if (n > std::numeric_limits<NodeId>::max())
            throw ConfigError("n exceeds the 32-bit node id range");
        if (lambda_model.is_constant() && !(pref_in(0.0, lambda_model.location()) > 0.0))
            throw ConfigError("in-degree preference at degree 0 must be positive (constant in-degree fitness is 0); "
                              "new nodes could never be chosen");
        if (model == ModelKind::krapivsky) {
            if (!(p > 0.0 && p <= 1.0))
                throw ConfigError("krapivsky: p must lie in (0, 1], got " + std::to_string(p));
            if (p < 1.0 && mu_model.is_constant() && !(pref_out(0.0, mu_model.location()) > 0.0))
                throw ConfigError("krapivsky: out-degree preference of seed nodes is 0 (constant out-degree "
                                  "fitness is 0); the first edge step could not sample a tail");
        }
    }

    /// Whether the repeat-array index can represent both preference functions.
    bool supports_repeat_array() const {
        const bool in_ok = pref_in.is_unit_linear() && lambda_model.is_constant();
        const bool out_ok = model == ModelKind::price || (pref_out.is_unit_linear() && mu_model.is_constant());
        return in_ok && out_ok;
    }
};

struct GenerationResult {
    Graph graph;
    std::uint64_t iterations = 0;
    std::uint64_t node_steps = 0;
    double wall_seconds = 0.0;
    ModelConfig config;
};

/// Where generated edges go besides the degree counters.
struct GraphOutput {
    bool retain_edges = false;
    EdgeWriter* writer = nullptr;
};

/// One generation run of Price's or Krapivsky's model over a chosen index type.
/// The graph and indexes stay inspectable after run().
template <SamplingIndex Index>
class Generator {
public:
    Generator(const ModelConfig& config, Rng& rng, GraphOutput output = {})
        : config_(config), rng_(&rng), in_(index_options(config, 1)), out_(index_options(config, 2)) {
        config_.validate();
        if constexpr (std::is_same_v<Index, RepeatArrayIndex>) {
            if (!config_.supports_repeat_array())
                throw ConfigError("array index requires linear preference with c = 1 and constant fitness");
        }
        graph_.retain_edges(output.retain_edges);
        graph_.stream_edges_to(output.writer);
        graph_.reserve(config_.n);
        in_.reserve(config_.n);
        if (config_.model == ModelKind::krapivsky)
            out_.reserve(config_.n);
        for (std::uint64_t i = 0; i < config_.seed_graph_size; ++i)
            add_seed_node();
        if (!(in_.total_mass() > 0.0))
            throw ConfigError("seed graph has zero in-degree preference mass");
    }

    Generator(const Generator&) = delete;
    Generator& operator=(const Generator&) = delete;

    void run() {
        const auto start = std::chrono::steady_clock::now();
        if (config_.model == ModelKind::price)
            run_price();
        else
            run_krapivsky();
        wall_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    const Graph& graph() const noexcept { return graph_; }
    const Index& in_index() const noexcept { return in_; }
    const Index& out_index() const noexcept { return out_; }
    std::uint64_t iterations() const noexcept { return iterations_; }
    std::uint64_t node_steps() const noexcept { return node_steps_; }
    double wall_seconds() const noexcept { return wall_seconds_; }

    GenerationResult take_result() {
        return GenerationResult{std::move(graph_), iterations_, node_steps_, wall_seconds_, config_};
    }

    /// Largest relative gap between an index mass and the preference
    /// recomputed from the graph's degree counters.
    double coherence_deviation() const {
        double worst = 0.0;
        for (NodeId v = 0; v < graph_.node_count(); ++v) {
            const NodeRecord& r = graph_.node(v);
            worst = std::max(worst, detail::relative_deviation(
                                        in_.mass(v), config_.pref_in(static_cast<double>(r.in_degree), r.fitness_in)));
            if (config_.model == ModelKind::krapivsky)
                worst = std::max(worst, detail::relative_deviation(
                                            out_.mass(v), config_.pref_out(static_cast<double>(r.out_degree),
                                                                           r.fitness_out)));
        }
        return worst;
    }

private:
    static IndexOptions index_options(const ModelConfig& config, std::uint64_t salt) {
        const FitnessModel& fitness = salt == 1 ? config.lambda_model : config.mu_model;
        return IndexOptions{mix_seed(config.seed ^ (salt << 56)), fitness.location()};
    }

    bool krapivsky() const noexcept { return config_.model == ModelKind::krapivsky; }

    void add_seed_node() {
        const double lambda = config_.lambda_model.draw(*rng_);
        const double mu = krapivsky() ? config_.mu_model.draw(*rng_) : 0.0;
        const NodeId v = graph_.add_node(lambda, mu);
        in_.insert(v, config_.pref_in(0.0, lambda));
        if (krapivsky())
            out_.insert(v, config_.pref_out(0.0, mu));
    }

    void bump_in(NodeId v) {
        const NodeRecord& r = graph_.node(v);
        in_.increment(v, config_.pref_in(static_cast<double>(r.in_degree), r.fitness_in));
    }

    void bump_out(NodeId v) {
        const NodeRecord& r = graph_.node(v);
        out_.increment(v, config_.pref_out(static_cast<double>(r.out_degree), r.fitness_out));
    }

    // Sample a target by in-degree, add a node pointing at it.
    void node_step() {
        const NodeId target = in_.sample(*rng_);
        const double lambda = config_.lambda_model.draw(*rng_);
        const double mu = krapivsky() ? config_.mu_model.draw(*rng_) : 0.0;
        const NodeId v = graph_.add_node(lambda, mu);
        graph_.add_edge(v, target);
        bump_in(target);
        in_.insert(v, config_.pref_in(0.0, lambda));
        if (krapivsky())
            out_.insert(v, config_.pref_out(1.0, mu));
        ++node_steps_;
    }

    void run_price() {
        for (std::uint64_t i = graph_.node_count(); i < config_.n; ++i) {
            node_step();
            ++iterations_;
        }
    }

    void run_krapivsky() {
        const std::uint64_t cap = config_.iteration_cap();
        const bool always_node = config_.p >= 1.0;
        while (graph_.node_count() < config_.n) {
            if (iterations_ >= cap)
                throw std::runtime_error("krapivsky: iteration cap " + std::to_string(cap) + " reached with " +
                                         std::to_string(graph_.node_count()) + " of " + std::to_string(config_.n) +
                                         " nodes");
            if (always_node || rng_->uniform() < config_.p) {
                node_step();
                ++iterations_;
                continue;
            }
            if (config_.simple && graph_.node_count() < 2)
                continue; // no distinct pair exists yet; redraw the step
            NodeId tail, head;
            for (std::uint64_t attempt = 0;; ++attempt) {
                if (config_.literal_pseudocode) {
                    tail = in_.sample(*rng_);
                    head = out_.sample(*rng_);
                } else {
                    tail = out_.sample(*rng_);
                    head = in_.sample(*rng_);
                }
                if (!config_.simple || tail != head)
                    break;
                if (attempt > 1'000'000)
                    throw std::runtime_error("krapivsky --simple: could not draw distinct endpoints");
            }
            graph_.add_edge(tail, head);
            bump_out(tail);
            bump_in(head);
            ++iterations_;
        }
    }

    ModelConfig config_;
    Rng* rng_;
    Graph graph_;
    Index in_;
    Index out_; // unused by price
    std::uint64_t iterations_ = 0;
    std::uint64_t node_steps_ = 0;
    double wall_seconds_ = 0.0;
};

/// Runs one generation with the index type selected at runtime.
inline GenerationResult generate(const ModelConfig& config, IndexKind kind, Rng& rng, GraphOutput output = {}) {
    return visit_index_kind(kind, [&]<class Index>(std::type_identity<Index>) {
        Generator<Index> generator(config, rng, output);
        generator.run();
        return generator.take_result();
    });
}

inline GenerationResult generate(const ModelConfig& config, IndexKind kind = IndexKind::heap,
                                 GraphOutput output = {}) {
    Rng rng(config.seed);
    return generate(config, kind, rng, output);
}

inline GenerationResult price_generate(ModelConfig config, Rng& rng, IndexKind kind = IndexKind::heap,
                                       GraphOutput output = {}) {
    config.model = ModelKind::price;
    return generate(config, kind, rng, output);
}

inline GenerationResult krapivsky_generate(ModelConfig config, Rng& rng, IndexKind kind = IndexKind::heap,
                                           GraphOutput output = {}) {
    config.model = ModelKind::krapivsky;
    return generate(config, kind, rng, output);
}

} // namespace pagen
