#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "pagen/errors.hpp"
#include "pagen/rng.hpp"

namespace pagen {

namespace detail {

inline double parse_real(std::string_view text, std::string_view what) {
    std::string buf(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(buf, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != buf.size() || !std::isfinite(value))
        throw ParameterError(std::string(what) + ": cannot parse number '" + buf + "'");
    return value;
}

inline std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Maps (degree, fitness) to a preference mass.
///   linear: c * x + fitness
///   power:  x^alpha + fitness   (fitness plays the additive constant)
class PreferenceFunction {
public:
    enum class Kind { linear, power };

    static PreferenceFunction linear(double c = 1.0) {
        if (!(c >= 0.0) || !std::isfinite(c))
            throw ParameterError("linear preference: c must be >= 0");
        return PreferenceFunction(Kind::linear, c, 1.0);
    }

    static PreferenceFunction power(double alpha) {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw ParameterError("power preference: alpha must be > 0");
        return PreferenceFunction(Kind::power, 1.0, alpha);
    }

    /// Parses `linear:c=<real>`, `linear`, or `power:alpha=<real>`.
    static PreferenceFunction parse(std::string_view text) {
        const auto colon = text.find(':');
        const auto head = text.substr(0, colon);
        const auto tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
        auto value_of = [&](std::string_view key) {
            if (tail.substr(0, key.size()) != key || tail.size() <= key.size() || tail[key.size()] != '=')
                throw ParameterError("preference '" + std::string(text) + "': expected " + std::string(key) + "=<value>");
            return detail::parse_real(tail.substr(key.size() + 1), "preference");
        };
        if (head == "linear")
            return tail.empty() ? linear(1.0) : linear(value_of("c"));
        if (head == "power")
            return power(value_of("alpha"));
        throw ParameterError("unknown preference kind '" + std::string(head) + "' (expected linear or power)");
    }

    Kind kind() const noexcept { return kind_; }
    double coefficient() const noexcept { return coefficient_; }
    double exponent() const noexcept { return exponent_; }

    /// Unchecked evaluation for the generation loop; arguments are non-negative by construction.
    double operator()(double x, double fitness) const noexcept {
        if (kind_ == Kind::linear)
            return coefficient_ * x + fitness;
        return (x == 0.0 ? 0.0 : std::pow(x, exponent_)) + fitness;
    }

    double mass(double x, double fitness) const {
        if (!(x >= 0.0) || !(fitness >= 0.0))
            throw ParameterError("preference mass: degree and fitness must be >= 0");
        return (*this)(x, fitness);
    }

    /// linear with c = 1, the only form the repeat-array index can represent.
    bool is_unit_linear() const noexcept { return kind_ == Kind::linear && coefficient_ == 1.0; }

    std::string to_string() const {
        if (kind_ == Kind::linear)
            return "linear:c=" + detail::format_real(coefficient_);
        return "power:alpha=" + detail::format_real(exponent_);
    }

    friend bool operator==(const PreferenceFunction&, const PreferenceFunction&) = default;

private:
    PreferenceFunction(Kind kind, double c, double alpha) : kind_(kind), coefficient_(c), exponent_(alpha) {}

    Kind kind_;
    double coefficient_;
    double exponent_;
};

/// Distribution of per-node fitness, drawn once when a node is created.
class FitnessModel {
public:
    enum class Kind { constant, pareto, truncated_normal };

    static FitnessModel constant(double value) {
        if (!(value >= 0.0) || !std::isfinite(value))
            throw ParameterError("constant fitness must be >= 0");
        return FitnessModel(Kind::constant, value);
    }

    /// Pareto with shape = location and scale = location - 1, so the mean is `location`.
    static FitnessModel pareto(double location) {
        if (!(location > 1.0) || !std::isfinite(location))
            throw ParameterError("pareto fitness requires location > 1 (scale = location - 1), got " +
                                 detail::format_real(location));
        return FitnessModel(Kind::pareto, location);
    }

    /// N(location, (location/4)^2) with negatives clamped to 0.
    static FitnessModel truncated_normal(double location) {
        if (!(location > 0.0) || !std::isfinite(location))
            throw ParameterError("normal fitness requires location > 0");
        return FitnessModel(Kind::truncated_normal, location);
    }

    /// Parses `const:<v>`, `pareto:<v>`, `normal:<v>`.
    static FitnessModel parse(std::string_view text) {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos)
            throw ParameterError("fitness '" + std::string(text) + "': expected <kind>:<value>");
        const auto head = text.substr(0, colon);
        const double v = detail::parse_real(text.substr(colon + 1), "fitness");
        if (head == "const" || head == "constant")
            return constant(v);
        if (head == "pareto")
            return pareto(v);
        if (head == "normal")
            return truncated_normal(v);
        throw ParameterError("unknown fitness kind '" + std::string(head) + "' (expected const, pareto or normal)");
    }

    Kind kind() const noexcept { return kind_; }
    double location() const noexcept { return location_; }
    bool is_constant() const noexcept { return kind_ == Kind::constant; }

    /// Constant kinds consume no random draws.
    double draw(Rng& rng) const {
        switch (kind_) {
        case Kind::constant:
            return location_;
        case Kind::pareto:
            return rng.pareto(location_, location_ - 1.0);
        case Kind::truncated_normal:
            return rng.truncated_normal(location_, location_ / 4.0);
        }
        return location_;
    }

    std::string to_string() const {
        switch (kind_) {
        case Kind::constant:
            return "const:" + detail::format_real(location_);
        case Kind::pareto:
            return "pareto:" + detail::format_real(location_);
        case Kind::truncated_normal:
            return "normal:" + detail::format_real(location_);
        }
        return {};
    }

    friend bool operator==(const FitnessModel&, const FitnessModel&) = default;

private:
    FitnessModel(Kind kind, double location) : kind_(kind), location_(location) {}

    Kind kind_;
    double location_;
};

inline double draw_fitness(const FitnessModel& model, Rng& rng) { return model.draw(rng); }

} // namespace pagen
