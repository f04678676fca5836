#pragma once

#include <cmath>
#include <vector>

#include "pagen/index/common.hpp"

namespace pagen {

/// Constant-time index for linear preference c*x + fitness with c = 1 and
/// one fitness value shared by every node.
///
/// A node of mass `k + fitness` owns k entries in an endpoint array. One
/// uniform draw over [0, entries + fitness * nodes) selects either an array
/// entry (degree part) or a node uniformly (fitness part), which is exactly
/// proportional to mass. Masses handed to insert/increment must therefore
/// be `fitness + integer`.
class RepeatArrayIndex {
public:
    static constexpr IndexKind kind = IndexKind::array;
    static constexpr std::size_t item_footprint = 2 * sizeof(NodeId) + sizeof(std::uint32_t) + sizeof(std::uint32_t);

    RepeatArrayIndex() : RepeatArrayIndex(IndexOptions{}) {}
    explicit RepeatArrayIndex(const IndexOptions& options) : fitness_(options.uniform_fitness) {
        if (!(fitness_ >= 0.0) || !std::isfinite(fitness_))
            throw ParameterError("repeat-array index: fitness must be >= 0");
    }

    void reserve(std::size_t n) {
        nodes_.reserve(n);
        entries_.reserve(2 * n);
        position_.reserve(n);
        units_.reserve(n);
    }

    double fitness() const noexcept { return fitness_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }
    bool contains(NodeId node) const noexcept { return position_.contains(node); }
    double total_mass() const noexcept {
        return static_cast<double>(entries_.size()) + fitness_ * static_cast<double>(nodes_.size());
    }
    double mass(NodeId node) const { return static_cast<double>(units_[position_.at(node)]) + fitness_; }

    void insert(NodeId node, double mass) {
        detail::check_mass(mass);
        const auto units = to_units(mass - fitness_, node);
        position_.claim(node, static_cast<std::uint32_t>(nodes_.size()));
        nodes_.push_back(node);
        units_.push_back(units);
        entries_.insert(entries_.end(), units, node);
    }

    void increment(NodeId node, double new_mass) {
        const auto slot = position_.at(node);
        const double extra = new_mass - mass(node);
        if (!(extra >= 0.0) || !std::isfinite(new_mass))
            throw MonotonicityError("repeat-array index: mass of node " + std::to_string(node) + " may only increase");
        const auto units = to_units(extra, node);
        units_[slot] += units;
        entries_.insert(entries_.end(), units, node);
    }

    template <class Random>
    NodeId sample(Random& rng) const {
        return sample_at(rng.uniform());
    }

    NodeId sample_at(double u) const {
        const double total = total_mass();
        if (nodes_.empty() || !(total > 0.0))
            throw SamplingError("repeat-array index: cannot sample from an empty or zero-mass index");
        const double target = u * total;
        const auto degree_part = static_cast<double>(entries_.size());
        if (target < degree_part)
            return entries_[std::min(static_cast<std::size_t>(target), entries_.size() - 1)];
        const auto pick = static_cast<std::size_t>((target - degree_part) / fitness_);
        return nodes_[std::min(pick, nodes_.size() - 1)];
    }

    ValidationReport validate() const {
        ValidationReport report;
        report.items = nodes_.size();
        std::vector<std::uint64_t> counted(nodes_.size(), 0);
        for (NodeId node : entries_) {
            if (!position_.contains(node)) {
                report.position_map_ok = false;
                continue;
            }
            ++counted[position_[node]];
        }
        for (std::size_t slot = 0; slot < nodes_.size(); ++slot) {
            if (!position_.contains(nodes_[slot]) || position_[nodes_[slot]] != slot)
                report.position_map_ok = false;
            report.max_relative_deviation =
                std::max(report.max_relative_deviation,
                         detail::relative_deviation(static_cast<double>(units_[slot]) + fitness_,
                                                    static_cast<double>(counted[slot]) + fitness_));
        }
        return report;
    }

private:
    static std::uint32_t to_units(double degree_part, NodeId node) {
        const double rounded = std::round(degree_part);
        if (rounded < 0.0 || std::abs(degree_part - rounded) > 1e-9 * std::max(1.0, rounded))
            throw ParameterError("repeat-array index: mass of node " + std::to_string(node) +
                                 " is not fitness + integer (requires linear preference with c = 1 "
                                 "and one constant fitness)");
        return static_cast<std::uint32_t>(rounded);
    }

    double fitness_;
    std::vector<NodeId> nodes_;
    std::vector<std::uint32_t> units_;
    std::vector<NodeId> entries_;
    detail::PositionMap position_;
};

} // namespace pagen
