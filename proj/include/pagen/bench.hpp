#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pagen/analysis.hpp"
#include "pagen/models.hpp"

namespace pagen {

struct BenchResult {
    IndexKind kind = IndexKind::heap;
    std::uint64_t n = 0;
    std::size_t replications = 0;
    double mean_seconds = 0.0;
    double ci95_seconds = 0.0;              // half-width, 2 standard errors
    std::uint64_t memory_bytes_estimate = 0;
    std::vector<double> seconds;            // per replication
};

struct BenchPlan {
    std::vector<IndexKind> kinds{IndexKind::heap};
    std::vector<std::uint64_t> sizes{100000};
    std::size_t replications = 3;
    ModelConfig base; // n and seed are overridden per run
    bool warmup = true;
};

/// Seconds spent in the sample/increment/insert loop; no output is written.
inline double time_generation(const ModelConfig& config, IndexKind kind) {
    return visit_index_kind(kind, [&]<class Index>(std::type_identity<Index>) {
        Rng rng(config.seed);
        Generator<Index> generator(config, rng);
        generator.run();
        return generator.wall_seconds();
    });
}

inline std::uint64_t memory_estimate(IndexKind kind, const ModelConfig& config) {
    const std::size_t footprint = visit_index_kind(kind, []<class Index>(std::type_identity<Index>) {
        return Index::item_footprint;
    });
    const std::uint64_t indexes = config.model == ModelKind::krapivsky ? 2 : 1;
    return config.n * (indexes * footprint + sizeof(NodeRecord));
}

/// Cells run sequentially, kinds inner, sizes outer. Replication r uses
/// seed base.seed + r; the warm-up run per cell is discarded.
inline std::vector<BenchResult> run_bench(const BenchPlan& plan) {
    if (plan.replications < 1)
        throw ParameterError("bench: replications must be >= 1");
    for (std::size_t i = 1; i < plan.sizes.size(); ++i)
        if (plan.sizes[i] < plan.sizes[i - 1])
            throw ParameterError("bench: sizes must be ascending");
    std::vector<BenchResult> results;
    for (std::uint64_t n : plan.sizes) {
        for (IndexKind kind : plan.kinds) {
            ModelConfig config = plan.base;
            config.n = n;
            BenchResult cell;
            cell.kind = kind;
            cell.n = n;
            cell.replications = plan.replications;
            cell.memory_bytes_estimate = memory_estimate(kind, config);
            if (plan.warmup) {
                ModelConfig warm = config;
                warm.seed = plan.base.seed + plan.replications;
                (void)time_generation(warm, kind);
            }
            for (std::size_t r = 0; r < plan.replications; ++r) {
                config.seed = plan.base.seed + r;
                cell.seconds.push_back(time_generation(config, kind));
            }
            const Summary s = summarize(cell.seconds);
            cell.mean_seconds = s.mean;
            cell.ci95_seconds = s.half_width;
            results.push_back(std::move(cell));
        }
    }
    return results;
}

inline void write_bench_csv(std::ostream& out, std::span<const BenchResult> results) {
    out << "index_kind,n,mean_seconds,ci95_seconds,replications\n";
    const auto old_precision = out.precision(9);
    for (const BenchResult& r : results)
        out << to_string(r.kind) << ',' << r.n << ',' << r.mean_seconds << ',' << r.ci95_seconds << ','
            << r.replications << '\n';
    out.precision(old_precision);
}

inline std::vector<BenchResult> read_bench_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != "index_kind,n,mean_seconds,ci95_seconds,replications")
        throw ParseError("bench csv: unexpected header", line_no);
    std::vector<BenchResult> results;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::stringstream row(line);
        std::string kind, n, mean, ci, reps;
        if (!std::getline(row, kind, ',') || !std::getline(row, n, ',') || !std::getline(row, mean, ',') ||
            !std::getline(row, ci, ',') || !std::getline(row, reps))
            throw ParseError("bench csv: expected 5 fields", line_no);
        try {
            BenchResult r;
            r.kind = parse_index_kind(kind);
            r.n = std::stoull(n);
            r.mean_seconds = std::stod(mean);
            r.ci95_seconds = std::stod(ci);
            r.replications = std::stoull(reps);
            results.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw ParseError(std::string("bench csv: ") + e.what(), line_no);
        }
    }
    return results;
}

} // namespace pagen
