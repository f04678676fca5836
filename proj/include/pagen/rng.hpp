#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "pagen/errors.hpp"

namespace pagen {

/// Seedable random source. The engine is mt19937_64 (period 2^19937 - 1);
/// the real-valued transforms are implemented here instead of via
/// <random> distributions, whose output is implementation-defined, so a
/// seed yields the same stream with every standard library.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 1) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Raw 64-bit draw (UniformRandomBitGenerator interface).
    result_type operator()() { return engine_(); }
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

    /// u in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-shift; bias < 2^-32 for bound < 2^32.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }

    /// Pareto(shape, scale) by inverse CDF: scale * (1 - u)^(-1/shape), support [scale, inf).
    double pareto(double shape, double scale) {
        if (!(shape > 1.0) || !std::isfinite(shape))
            throw ParameterError("pareto: shape must be > 1, got " + std::to_string(shape));
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw ParameterError("pareto: scale must be > 0, got " + std::to_string(scale));
        // 1 - u lies in (0, 1], so the power is finite and >= 1.
        return scale * std::pow(1.0 - uniform(), -1.0 / shape);
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    double standard_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// N(mean, stddev^2) with negative draws replaced by exactly 0.
    double truncated_normal(double mean, double stddev) {
        if (!(stddev >= 0.0) || !std::isfinite(stddev))
            throw ParameterError("truncated_normal: stddev must be >= 0, got " + std::to_string(stddev));
        if (stddev == 0.0)
            return mean < 0.0 ? 0.0 : mean;
        const double x = mean + stddev * standard_normal();
        return x < 0.0 ? 0.0 : x;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; derives decorrelated sub-seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace pagen
