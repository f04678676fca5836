#pragma once

#include <stdexcept>
#include <string>

namespace pagen {

/// Invalid numeric parameter (negative mass, pareto shape <= 1, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// API misuse: duplicate or unknown node, empty input, wrong operation for a kind.
class UsageError : public std::logic_error {
public:
    explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

/// Attempt to lower a node's mass; indexes only support increase-key.
class MonotonicityError : public UsageError {
public:
    explicit MonotonicityError(const std::string& what) : UsageError(what) {}
};

/// Sampling from an empty or zero-mass index.
class SamplingError : public std::runtime_error {
public:
    explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

/// Model configuration that cannot produce a network.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Regression over too few points.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace pagen
