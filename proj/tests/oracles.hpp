#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the index or analysis code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/zeta.hpp>

namespace pagen::oracle {

/// Upper critical value of chi-square with `df` degrees of freedom at `significance`.
inline double chi_square_critical(std::size_t df, double significance) {
    boost::math::chi_squared dist(static_cast<double>(df));
    return boost::math::quantile(boost::math::complement(dist, significance));
}

/// Pearson statistic of observed counts against expected probabilities.
inline double chi_square_statistic(std::span<const std::uint64_t> observed, std::span<const double> probabilities) {
    std::uint64_t total = 0;
    for (auto c : observed)
        total += c;
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(total);
        if (expected <= 0.0)
            continue;
        const double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    return stat;
}

/// Two-sample homogeneity statistic (2 x k contingency table).
inline double chi_square_homogeneity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    double na = 0, nb = 0;
    for (auto c : a)
        na += static_cast<double>(c);
    for (auto c : b)
        nb += static_cast<double>(c);
    double stat = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double col = static_cast<double>(a[i] + b[i]);
        if (col == 0.0)
            continue;
        const double ea = col * na / (na + nb), eb = col * nb / (na + nb);
        stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    }
    return stat;
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Kolmogorov-Smirnov statistic of samples against U[0,1).
inline double ks_uniform(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        d = std::max(d, static_cast<double>(i + 1) / n - samples[i]);
        d = std::max(d, samples[i] - static_cast<double>(i) / n);
    }
    return d;
}

/// Asymptotic KS critical value sqrt(-ln(significance/2)/2) / sqrt(n).
inline double ks_critical(std::size_t n, double significance) {
    return std::sqrt(-0.5 * std::log(significance / 2.0)) / std::sqrt(static_cast<double>(n));
}

/// Brute-force subtree sums of an implicit binary heap laid out as masses[slot].
inline std::vector<double> heap_subtree_sums(std::span<const double> masses) {
    std::vector<double> sums(masses.begin(), masses.end());
    for (std::size_t slot = sums.size(); slot-- > 1;)
        sums[(slot - 1) / 2] += sums[slot];
    return sums;
}

/// Discrete power law P(D = d) = d^-a / zeta(a), d >= 1, by table inversion
/// up to `table_limit` and continuous inversion of the tail beyond it.
class ZetaSampler {
public:
    ZetaSampler(double exponent, std::uint64_t table_limit = 200000) : exponent_(exponent), limit_(table_limit) {
        const double z = boost::math::zeta(exponent);
        cdf_.reserve(table_limit);
        double acc = 0.0;
        for (std::uint64_t d = 1; d <= table_limit; ++d) {
            acc += std::pow(static_cast<double>(d), -exponent) / z;
            cdf_.push_back(acc);
        }
    }

    template <class Engine>
    std::uint64_t operator()(Engine& engine) {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(engine);
        if (u < cdf_.back())
            return static_cast<std::uint64_t>(std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin()) + 1;
        // Tail mass above the table ~ continuous Pareto from limit + 0.5.
        const double v = std::uniform_real_distribution<double>(0.0, 1.0)(engine);
        const double x = (static_cast<double>(limit_) + 0.5) * std::pow(1.0 - v, -1.0 / (exponent_ - 1.0));
        return static_cast<std::uint64_t>(std::llround(x));
    }

private:
    double exponent_;
    std::uint64_t limit_;
    std::vector<double> cdf_;
};

/// Rate-equation degree exponents of the directed growth models.
inline double price_in_exponent(double lambda) { return 2.0 + lambda; }
inline double krapivsky_in_exponent(double p, double lambda) { return 2.0 + p * lambda; }
inline double krapivsky_out_exponent(double p, double mu) { return 1.0 + (1.0 + p * mu) / (1.0 - p); }

} // namespace pagen::oracle
