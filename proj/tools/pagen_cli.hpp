#pragma once

// Command-line front end: generate, analyze, bench, sweep-alpha.
// Exit codes: 0 success, 1 usage/parameter error, 2 runtime error.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pagen/pagen.hpp"

namespace pagen::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kRuntime = 2;

inline constexpr std::uint64_t kEdgeFileThreshold = 1'000'000;

/// Integer flag value; accepts plain integers and scientific notation (`1e7`).
inline std::uint64_t parse_count(const std::string& text, const std::string& flag) {
    std::uint64_t value = 0;
    if (detail::parse_int(std::string_view(text), value))
        return value;
    const double v = detail::parse_real(text, flag);
    if (v < 0.0 || v != std::floor(v) || v > 9007199254740992.0)
        throw ParameterError(flag + ": expected a non-negative integer, got '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            parts.push_back(item);
    return parts;
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point t, const char* format) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, format);
    return out.str();
}

inline fs::path prepare_out_dir(const std::string& requested, std::chrono::system_clock::time_point now) {
    fs::path dir = requested;
    if (dir.empty()) {
        const std::string base = "run-" + utc_timestamp(now, "%Y%m%d-%H%M%S");
        dir = base;
        for (int i = 1; fs::exists(dir); ++i)
            dir = base + "-" + std::to_string(i);
    }
    fs::create_directories(dir);
    return dir;
}

inline std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return in;
}

/// Model flags as typed on the command line; shared by every subcommand.
struct ModelFlags {
    std::string model = "krapivsky";
    std::string n = "10000";
    std::string p = "0.8";
    std::string fitness = "const:3.5";
    std::string fitness_out = "const:1.8";
    std::string pref = "linear:c=1";
    std::string pref_out; // defaults to --pref
    std::string index = "heap";
    std::string seed = "1";
    std::string seed_nodes = "1";
    bool simple = false;
    bool literal_pseudocode = false;

    void attach(CLI::App& app, bool with_n = true) {
        app.add_option("--model", model, "price | krapivsky")->capture_default_str();
        if (with_n)
            app.add_option("--n", n, "target node count (scientific notation accepted)")->capture_default_str();
        app.add_option("--p", p, "node-step probability (krapivsky)")->capture_default_str();
        app.add_option("--fitness", fitness, "in-degree fitness: const:<v> | pareto:<v> | normal:<v>")
            ->capture_default_str();
        app.add_option("--fitness-out", fitness_out, "out-degree fitness (krapivsky)")->capture_default_str();
        app.add_option("--pref", pref, "preference: linear:c=<v> | power:alpha=<v>")->capture_default_str();
        app.add_option("--pref-out", pref_out, "out-degree preference (default: same as --pref)");
        app.add_option("--index", index, "heap | treap-rand | treap-mass | naive | array")->capture_default_str();
        app.add_option("--seed", seed, "64-bit RNG seed")->capture_default_str();
        app.add_option("--seed-nodes", seed_nodes, "isolated nodes in the seed graph")->capture_default_str();
        app.add_flag("--simple", simple, "resample edge-step endpoints until distinct");
        app.add_flag("--literal-pseudocode", literal_pseudocode,
                     "edge step samples the tail by in-degree and the head by out-degree");
    }

    ModelConfig config() const {
        ModelConfig c;
        c.model = parse_model_kind(model);
        c.n = parse_count(n, "--n");
        c.p = detail::parse_real(p, "--p");
        c.lambda_model = FitnessModel::parse(fitness);
        c.mu_model = FitnessModel::parse(fitness_out);
        c.pref_in = PreferenceFunction::parse(pref);
        c.pref_out = PreferenceFunction::parse(pref_out.empty() ? pref : pref_out);
        c.seed = parse_count(seed, "--seed");
        c.seed_graph_size = parse_count(seed_nodes, "--seed-nodes");
        c.simple = simple;
        c.literal_pseudocode = literal_pseudocode;
        c.validate();
        return c;
    }

    IndexKind index_kind() const { return parse_index_kind(index); }

    /// Every parameter with defaults resolved.
    json to_json() const {
        const ModelConfig c = config();
        return json{{"model", std::string(to_string(c.model))},
                    {"n", c.n},
                    {"p", c.p},
                    {"fitness", c.lambda_model.to_string()},
                    {"fitness_out", c.mu_model.to_string()},
                    {"pref", c.pref_in.to_string()},
                    {"pref_out", c.pref_out.to_string()},
                    {"index", std::string(to_string(index_kind()))},
                    {"seed", c.seed},
                    {"seed_nodes", c.seed_graph_size},
                    {"simple", c.simple},
                    {"literal_pseudocode", c.literal_pseudocode}};
    }

    void load(const json& params) {
        auto text = [&](const char* key, std::string& field) {
            if (!params.contains(key))
                return;
            const auto& v = params.at(key);
            if (v.is_string())
                field = v.get<std::string>();
            else if (v.is_number_unsigned())
                field = std::to_string(v.get<std::uint64_t>());
            else if (v.is_number())
                field = detail::format_real(v.get<double>());
            else
                throw ParameterError(std::string("manifest: bad value for ") + key);
        };
        text("model", model);
        text("n", n);
        text("p", p);
        text("fitness", fitness);
        text("fitness_out", fitness_out);
        text("pref", pref);
        text("pref_out", pref_out);
        text("index", index);
        text("seed", seed);
        text("seed_nodes", seed_nodes);
        if (params.contains("simple"))
            simple = params.at("simple").get<bool>();
        if (params.contains("literal_pseudocode"))
            literal_pseudocode = params.at("literal_pseudocode").get<bool>();
    }
};

inline json manifest_header(const std::string& subcommand, std::chrono::system_clock::time_point started) {
    return json{{"tool", "pagen"},
                {"version", PAGEN_VERSION},
                {"subcommand", subcommand},
                {"started_at", utc_timestamp(started, "%Y-%m-%dT%H:%M:%SZ")}};
}

inline void finish_manifest(json& manifest, const fs::path& dir, std::vector<std::string> outputs) {
    manifest["finished_at"] = utc_timestamp(std::chrono::system_clock::now(), "%Y-%m-%dT%H:%M:%SZ");
    json files = json::array();
    for (const auto& name : outputs)
        files.push_back((dir / name).string());
    files.push_back((dir / "manifest.json").string());
    manifest["outputs"] = files;
    auto out = open_output(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

inline json fit_json(const DegreeStats& stats) {
    if (!stats.fit)
        return nullptr;
    return json{{"alpha", stats.fit->exponent},
                {"slope", stats.fit->slope},
                {"r2", stats.fit->r2},
                {"fit_range", {stats.fit->d_lo, stats.fit->d_hi}},
                {"points", stats.fit->points}};
}

// ---------------------------------------------------------------- generate

struct GenerateCommand {
    ModelFlags flags;
    std::string edges = "auto";
    std::string out_dir;
    std::string config_file;

    void attach(CLI::App& app) {
        flags.attach(app);
        app.add_option("--edges", edges, "write edges.tsv: auto (n <= 1e6) | on | off")
            ->check(CLI::IsMember({"auto", "on", "off"}))
            ->capture_default_str();
        app.add_option("--out", out_dir, "run directory (default: run-<UTC timestamp>)");
        app.add_option("--config", config_file, "rerun with the parameters of an existing manifest.json");
    }

    int run(std::ostream& out) {
        const auto started = std::chrono::system_clock::now();
        if (!config_file.empty()) {
            auto in = open_input(config_file);
            json manifest;
            try {
                manifest = json::parse(in);
            } catch (const json::exception& e) {
                throw ParameterError("--config: " + std::string(e.what()));
            }
            if (!manifest.contains("parameters"))
                throw ParameterError("--config: manifest has no 'parameters' block");
            flags.load(manifest.at("parameters"));
            if (manifest.at("parameters").contains("edges"))
                edges = manifest.at("parameters").at("edges").get<std::string>();
        }
        const ModelConfig config = flags.config();
        const IndexKind kind = flags.index_kind();
        json params = flags.to_json();
        params["edges"] = edges;

        const fs::path dir = prepare_out_dir(out_dir, started);
        const bool write_edges = edges == "on" || (edges == "auto" && config.n <= kEdgeFileThreshold);
        std::vector<std::string> outputs;

        std::optional<std::ofstream> edge_file;
        std::optional<EdgeWriter> writer;
        if (write_edges) {
            edge_file.emplace(open_output(dir / "edges.tsv"));
            writer.emplace(*edge_file);
            outputs.push_back("edges.tsv");
        }
        Rng rng(config.seed);
        GenerationResult result = generate(config, kind, rng, GraphOutput{false, writer ? &*writer : nullptr});
        if (writer) {
            writer->flush();
            edge_file->close();
            if (!*edge_file)
                throw std::runtime_error("error writing edges.tsv");
        }

        for (auto [attribute, name] : {std::pair{DegreeAttribute::in, "degree_in.csv"},
                                       std::pair{DegreeAttribute::out, "degree_out.csv"}}) {
            auto file = open_output(dir / name);
            write_histogram_csv(file, degree_histogram(result.graph, attribute));
            outputs.push_back(name);
        }

        const Graph& g = result.graph;
        json manifest = manifest_header("generate", started);
        manifest["parameters"] = params;
        manifest["seed"] = config.seed;
        manifest["result"] = json{{"nodes", g.node_count()},
                                  {"edges", g.edge_count()},
                                  {"iterations", result.iterations},
                                  {"node_steps", result.node_steps},
                                  {"wall_seconds", result.wall_seconds},
                                  {"d_max", {{"in", g.max_in_degree()},
                                             {"out", g.max_out_degree()},
                                             {"total", g.max_total_degree()}}}};
        finish_manifest(manifest, dir, outputs);
        out << "wrote " << dir.string() << ": " << g.node_count() << " nodes, " << g.edge_count() << " edges in "
            << result.wall_seconds << " s\n";
        return kOk;
    }
};

// ---------------------------------------------------------------- analyze

struct AnalyzeCommand {
    std::string edges_file;
    std::string in_hist_file;
    std::string out_hist_file;
    std::string min_degree = "5";
    std::string max_degree;
    double min_ccdf = -1.0; // < 0: 10 / |V|
    std::string out_dir;

    void attach(CLI::App& app) {
        app.add_option("--edges", edges_file, "edge list (tail<TAB>head per line)");
        app.add_option("--in-hist", in_hist_file, "in-degree histogram CSV (degree,count)");
        app.add_option("--out-hist", out_hist_file, "out-degree histogram CSV (degree,count)");
        app.add_option("--min-degree", min_degree, "smallest degree in the regression")->capture_default_str();
        app.add_option("--max-degree", max_degree, "largest degree in the regression (default: unbounded)");
        app.add_option("--min-ccdf", min_ccdf, "smallest ccdf value in the regression (default: 10/|V|)");
        app.add_option("--out", out_dir, "output directory (default: run-<UTC timestamp>)");
    }

    FitRange range_for(std::uint64_t nodes) const {
        FitRange range = FitRange::defaults_for(nodes);
        range.min_degree = parse_count(min_degree, "--min-degree");
        if (!max_degree.empty())
            range.max_degree = parse_count(max_degree, "--max-degree");
        if (min_ccdf >= 0.0)
            range.min_ccdf = min_ccdf;
        return range;
    }

    int run(std::ostream& out) {
        const auto started = std::chrono::system_clock::now();
        if (edges_file.empty() == in_hist_file.empty())
            throw UsageError("analyze: give either --edges or --in-hist (optionally with --out-hist)");

        std::optional<DegreeHistogram> in_hist, out_hist;
        json stats;
        if (!edges_file.empty()) {
            auto in = open_input(edges_file);
            const Graph g = read_edge_list(in);
            in_hist = degree_histogram(g, DegreeAttribute::in);
            out_hist = degree_histogram(g, DegreeAttribute::out);
            stats["nodes"] = g.node_count();
            stats["edges"] = g.edge_count();
            stats["d_max"] = {{"in", g.max_in_degree()}, {"out", g.max_out_degree()}, {"total", g.max_total_degree()}};
            stats["star_ratio"] = star_ratio(g);
        } else {
            auto in = open_input(in_hist_file);
            in_hist = read_histogram_csv(in);
            if (!out_hist_file.empty()) {
                auto in_out = open_input(out_hist_file);
                out_hist = read_histogram_csv(in_out);
            }
            std::uint64_t nodes = 0, edges = 0;
            for (const auto& [d, c] : *in_hist) {
                nodes += c;
                edges += d * c;
            }
            stats["nodes"] = nodes;
            stats["edges"] = edges;
            stats["d_max"] = {{"in", in_hist->rbegin()->first},
                              {"out", out_hist ? json(out_hist->rbegin()->first) : json(nullptr)},
                              {"total", nullptr}};
            stats["star_ratio"] = nullptr; // needs per-node total degree
        }

        const std::uint64_t nodes = stats["nodes"].get<std::uint64_t>();
        const FitRange range = range_for(nodes);
        const DegreeStats in_stats = describe(*in_hist, range);
        std::optional<DegreeStats> out_stats;
        if (out_hist)
            out_stats = describe(*out_hist, range);

        json result;
        result["alpha_in"] = in_stats.fit ? json(in_stats.fit->exponent) : json(nullptr);
        result["alpha_out"] = out_stats && out_stats->fit ? json(out_stats->fit->exponent) : json(nullptr);
        result["r2"] = {{"in", in_stats.fit ? json(in_stats.fit->r2) : json(nullptr)},
                        {"out", out_stats && out_stats->fit ? json(out_stats->fit->r2) : json(nullptr)}};
        result["fit_range"] = {
            {"in", in_stats.fit ? json{in_stats.fit->d_lo, in_stats.fit->d_hi} : json(nullptr)},
            {"out", out_stats && out_stats->fit ? json{out_stats->fit->d_lo, out_stats->fit->d_hi} : json(nullptr)}};
        result["d_max"] = stats["d_max"];
        result["edges"] = stats["edges"];
        result["nodes"] = stats["nodes"];
        result["star_ratio"] = stats["star_ratio"];
        result["fit"] = {{"in", fit_json(in_stats)}, {"out", out_stats ? fit_json(*out_stats) : json(nullptr)}};
        result["fit_bounds"] = {{"min_degree", range.min_degree},
                                {"max_degree", max_degree.empty() ? json(nullptr) : json(range.max_degree)},
                                {"min_ccdf", range.min_ccdf}};
        result["exponent_convention"] =
            "density exponent alpha = 1 - slope of least-squares log10(ccdf) vs log10(degree)";

        const fs::path dir = prepare_out_dir(out_dir, started);
        std::vector<std::string> outputs{"stats.json", "ccdf_in.csv"};
        {
            auto f = open_output(dir / "stats.json");
            f << result.dump(2) << '\n';
        }
        {
            auto f = open_output(dir / "ccdf_in.csv");
            write_ccdf_csv(f, in_stats.ccdf);
        }
        if (out_stats) {
            auto f = open_output(dir / "ccdf_out.csv");
            write_ccdf_csv(f, out_stats->ccdf);
            outputs.push_back("ccdf_out.csv");
        }
        json manifest = manifest_header("analyze", started);
        manifest["parameters"] = {{"edges", edges_file},
                                  {"in_hist", in_hist_file},
                                  {"out_hist", out_hist_file},
                                  {"min_degree", range.min_degree},
                                  {"max_degree", max_degree.empty() ? json(nullptr) : json(range.max_degree)},
                                  {"min_ccdf", range.min_ccdf}};
        finish_manifest(manifest, dir, outputs);
        out << result.dump(2) << '\n';
        return kOk;
    }
};

// ---------------------------------------------------------------- bench

struct BenchCommand {
    ModelFlags flags;
    std::string indexes = "heap,treap-rand,treap-mass";
    std::string sizes = "1e5,2e5,4e5";
    std::string reps = "3";
    bool no_warmup = false;
    std::string out_dir;

    void attach(CLI::App& app) {
        flags.attach(app, false);
        app.add_option("--indexes", indexes, "comma-separated index kinds")->capture_default_str();
        app.add_option("--sizes", sizes, "comma-separated ascending node counts")->capture_default_str();
        app.add_option("--reps", reps, "replications per cell")->capture_default_str();
        app.add_flag("--no-warmup", no_warmup, "skip the discarded warm-up run per cell");
        app.add_option("--out", out_dir, "output directory (default: run-<UTC timestamp>)");
    }

    int run(std::ostream& out) {
        const auto started = std::chrono::system_clock::now();
        BenchPlan plan;
        plan.base = flags.config();
        plan.kinds.clear();
        for (const auto& k : split_list(indexes))
            plan.kinds.push_back(parse_index_kind(k));
        plan.sizes.clear();
        for (const auto& s : split_list(sizes))
            plan.sizes.push_back(parse_count(s, "--sizes"));
        if (plan.kinds.empty() || plan.sizes.empty())
            throw ParameterError("bench: --indexes and --sizes must be non-empty");
        plan.replications = parse_count(reps, "--reps");
        plan.warmup = !no_warmup;
        for (std::uint64_t n : plan.sizes) {
            ModelConfig c = plan.base;
            c.n = n;
            c.validate();
        }
        if (std::find(plan.kinds.begin(), plan.kinds.end(), IndexKind::array) != plan.kinds.end() &&
            !plan.base.supports_repeat_array())
            throw ConfigError("array index requires linear preference with c = 1 and constant fitness");

        const auto results = run_bench(plan);
        const fs::path dir = prepare_out_dir(out_dir, started);
        {
            auto f = open_output(dir / "bench.csv");
            write_bench_csv(f, results);
        }
        json cells = json::array();
        for (const auto& r : results)
            cells.push_back({{"index_kind", std::string(to_string(r.kind))},
                             {"n", r.n},
                             {"seconds", r.seconds},
                             {"memory_bytes_estimate", r.memory_bytes_estimate}});
        json manifest = manifest_header("bench", started);
        json params = flags.to_json();
        params.erase("n");
        params.erase("index");
        params["indexes"] = indexes;
        params["sizes"] = plan.sizes;
        params["reps"] = plan.replications;
        params["warmup"] = plan.warmup;
        manifest["parameters"] = params;
        manifest["seed"] = plan.base.seed;
        manifest["cells"] = cells;
        finish_manifest(manifest, dir, {"bench.csv"});
        write_bench_csv(out, results);
        return kOk;
    }
};

// ---------------------------------------------------------------- sweep-alpha

struct SweepCommand {
    ModelFlags flags;
    std::string alphas = "0.8,1.0,1.2,1.5,2.0";
    std::string reps = "10";
    double c = 1.0;
    unsigned jobs = 1;
    std::string out_dir;

    void attach(CLI::App& app) {
        flags.n = "1e5";
        flags.attach(app);
        app.add_option("--alphas", alphas, "comma-separated preference exponents")->capture_default_str();
        app.add_option("--reps", reps, "replications per alpha (seeds seed..seed+reps-1)")->capture_default_str();
        app.add_option("--c", c, "additive constant of d^alpha + c (constant fitness on both degrees)")
            ->capture_default_str();
        app.add_option("--jobs", jobs, "replications run concurrently")->capture_default_str();
        app.add_option("--out", out_dir, "output directory (default: run-<UTC timestamp>)");
    }

    int run(std::ostream& out) {
        const auto started = std::chrono::system_clock::now();
        ModelConfig base = flags.config();
        base.lambda_model = FitnessModel::constant(c);
        base.mu_model = FitnessModel::constant(c);
        base.validate();
        std::vector<double> values;
        for (const auto& a : split_list(alphas))
            values.push_back(detail::parse_real(a, "--alphas"));
        if (values.empty())
            throw ParameterError("sweep-alpha: --alphas is empty");
        for (double a : values)
            (void)PreferenceFunction::power(a);

        const auto reports = sweep_alpha(base, values, parse_count(reps, "--reps"), flags.index_kind(), jobs);
        const fs::path dir = prepare_out_dir(out_dir, started);
        std::ostringstream csv;
        csv.precision(9);
        csv << "alpha,mean_ratio,ci95_lo,ci95_hi,replications\n";
        for (const auto& r : reports)
            csv << r.alpha << ',' << r.ratio.mean << ',' << r.ratio.lo() << ',' << r.ratio.hi() << ','
                << r.ratio.count << '\n';
        {
            auto f = open_output(dir / "sweep.csv");
            f << csv.str();
        }
        json manifest = manifest_header("sweep-alpha", started);
        json params = flags.to_json();
        params.erase("pref");
        params.erase("pref_out");
        params["fitness"] = base.lambda_model.to_string();
        params["fitness_out"] = base.mu_model.to_string();
        params["alphas"] = values;
        params["reps"] = parse_count(reps, "--reps");
        params["c"] = c;
        params["jobs"] = jobs;
        manifest["parameters"] = params;
        manifest["seed"] = base.seed;
        json per_alpha = json::array();
        for (const auto& r : reports)
            per_alpha.push_back({{"alpha", r.alpha}, {"ratios", r.ratios}});
        manifest["replications"] = per_alpha;
        finish_manifest(manifest, dir, {"sweep.csv"});
        out << csv.str();
        return kOk;
    }
};

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"pagen: preferential-attachment network generator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PAGEN_VERSION);

    GenerateCommand generate_cmd;
    AnalyzeCommand analyze_cmd;
    BenchCommand bench_cmd;
    SweepCommand sweep_cmd;
    auto* generate_app = app.add_subcommand("generate", "generate a network, write edges/degree CSVs/manifest");
    auto* analyze_app = app.add_subcommand("analyze", "fit degree-distribution exponents and star ratio");
    auto* bench_app = app.add_subcommand("bench", "time generation across index kinds and sizes");
    auto* sweep_app = app.add_subcommand("sweep-alpha", "star ratio d_max/|E| across preference exponents");
    generate_cmd.attach(*generate_app);
    analyze_cmd.attach(*analyze_app);
    bench_cmd.attach(*bench_app);
    sweep_cmd.attach(*sweep_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (generate_app->parsed())
            return generate_cmd.run(out);
        if (analyze_app->parsed())
            return analyze_cmd.run(out);
        if (bench_app->parsed())
            return bench_cmd.run(out);
        if (sweep_app->parsed())
            return sweep_cmd.run(out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::invalid_argument& e) { // ParameterError, ConfigError
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::logic_error& e) { // UsageError
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}

} // namespace pagen::cli
