#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "pagen/graph.hpp"
#include "pagen/models.hpp"

namespace pagen {

struct CcdfPoint {
    std::uint64_t degree;
    double ccdf; // P(D >= degree)
};

/// P(D >= d) at every occupied degree, ascending.
inline std::vector<CcdfPoint> ccdf(const DegreeHistogram& histogram) {
    std::uint64_t total = 0;
    for (const auto& [degree, count] : histogram)
        total += count;
    if (histogram.empty() || total == 0)
        throw UsageError("ccdf: empty histogram");
    std::vector<CcdfPoint> out;
    out.reserve(histogram.size());
    std::uint64_t at_or_above = total;
    for (const auto& [degree, count] : histogram) {
        if (count == 0)
            continue;
        out.push_back({degree, static_cast<double>(at_or_above) / static_cast<double>(total)});
        at_or_above -= count;
    }
    return out;
}

/// Degrees used by the regression: d in [min_degree, max_degree] with ccdf(d) >= min_ccdf.
struct FitRange {
    std::uint64_t min_degree = 5;
    std::uint64_t max_degree = std::numeric_limits<std::uint64_t>::max();
    double min_ccdf = 0.0;

    /// Drops the sparse extreme tail: ccdf >= 10 / |V|.
    static FitRange defaults_for(std::uint64_t node_count) {
        FitRange range;
        range.min_ccdf = node_count > 0 ? 10.0 / static_cast<double>(node_count) : 0.0;
        return range;
    }
};

struct PowerLawFit {
    double exponent = 0.0;  // density exponent, 1 - slope
    double slope = 0.0;     // of log10 ccdf against log10 degree
    double intercept = 0.0;
    double r2 = 0.0;
    std::uint64_t d_lo = 0; // first and last degree actually used
    std::uint64_t d_hi = 0;
    std::size_t points = 0;
};

/// Unweighted least squares of log10 ccdf on log10 degree over `range`.
/// A density ~ d^-a has ccdf ~ d^-(a-1), hence exponent = 1 - slope.
inline PowerLawFit fit_exponent(std::span<const CcdfPoint> points, const FitRange& range) {
    std::vector<std::pair<double, double>> xy;
    PowerLawFit fit;
    for (const CcdfPoint& pt : points) {
        if (pt.degree < std::max<std::uint64_t>(range.min_degree, 1) || pt.degree > range.max_degree ||
            pt.ccdf < range.min_ccdf || !(pt.ccdf > 0.0))
            continue;
        if (xy.empty())
            fit.d_lo = pt.degree;
        fit.d_hi = pt.degree;
        xy.emplace_back(std::log10(static_cast<double>(pt.degree)), std::log10(pt.ccdf));
    }
    if (xy.size() < 5)
        throw FitError("fit_exponent: need >= 5 distinct degrees in range, have " + std::to_string(xy.size()));

    const auto n = static_cast<double>(xy.size());
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (!(sxx > 0.0))
        throw FitError("fit_exponent: degenerate degree range");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (auto [x, y] : xy) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.exponent = 1.0 - fit.slope;
    fit.points = xy.size();
    return fit;
}

struct DegreeStats {
    DegreeHistogram histogram;
    std::vector<CcdfPoint> ccdf;
    std::optional<PowerLawFit> fit; // empty when the range holds < 5 degrees
};

inline DegreeStats describe(const DegreeHistogram& histogram, std::optional<FitRange> range = std::nullopt) {
    DegreeStats stats{histogram, ccdf(histogram), std::nullopt};
    std::uint64_t nodes = 0;
    for (const auto& [degree, count] : histogram)
        nodes += count;
    try {
        stats.fit = fit_exponent(stats.ccdf, range.value_or(FitRange::defaults_for(nodes)));
    } catch (const FitError&) {
        stats.fit.reset();
    }
    return stats;
}

/// Share of edges touching the busiest node: max incident edges / |E|.
/// A self-loop touches its node once, so the ratio stays within [0, 1].
inline double star_ratio(const Graph& g) {
    if (g.edge_count() == 0)
        throw UsageError("star_ratio: graph has no edges");
    std::uint64_t best = 0;
    for (const NodeRecord& r : g.nodes())
        best = std::max(best, r.incident_edges());
    return static_cast<double>(best) / static_cast<double>(g.edge_count());
}

/// mean +/- 2 standard errors.
struct Summary {
    double mean = 0.0;
    double stddev = 0.0;
    double half_width = 0.0;
    std::size_t count = 0;

    double lo() const noexcept { return mean - half_width; }
    double hi() const noexcept { return mean + half_width; }
};

inline Summary summarize(std::span<const double> values) {
    Summary s;
    s.count = values.size();
    if (values.empty())
        return s;
    for (double v : values)
        s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        s.half_width = 2.0 * s.stddev / std::sqrt(static_cast<double>(values.size()));
    }
    return s;
}

struct StarReport {
    double alpha = 0.0;
    Summary ratio;
    std::vector<double> ratios; // per replication, seed order
};

/// Runs `jobs(i)` for i in [0, count) on up to `workers` threads.
template <class Job>
void run_replications(std::size_t count, unsigned workers, Job&& job) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::mutex lock;
    std::size_t next = 0;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard guard(lock);
                    if (next >= count || failure)
                        return;
                    i = next++;
                }
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard guard(lock);
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

/// For each alpha, generate `replications` networks with preference
/// d^alpha + fitness on both degrees (seeds base.seed + i) and summarize
/// the star ratio.
inline std::vector<StarReport> sweep_alpha(const ModelConfig& base, std::span<const double> alphas,
                                           std::size_t replications, IndexKind kind = IndexKind::heap,
                                           unsigned jobs = 1) {
    if (replications < 2)
        throw ParameterError("sweep_alpha: need at least 2 replications");
    std::vector<StarReport> reports;
    for (double alpha : alphas) {
        StarReport report;
        report.alpha = alpha;
        report.ratios.assign(replications, 0.0);
        ModelConfig config = base;
        config.pref_in = PreferenceFunction::power(alpha);
        config.pref_out = PreferenceFunction::power(alpha);
        run_replications(replications, jobs, [&](std::size_t i) {
            ModelConfig rep = config;
            rep.seed = base.seed + i;
            report.ratios[i] = star_ratio(generate(rep, kind).graph);
        });
        report.ratio = summarize(report.ratios);
        reports.push_back(std::move(report));
    }
    return reports;
}

} // namespace pagen
