#pragma once

#include <vector>

#include "pagen/index/common.hpp"

namespace pagen {

/// Flat array with a running total. O(1) insert/increment, O(n) sample by
/// linear scan. Serves as the reference the tree indexes are checked against.
class NaiveIndex {
public:
    static constexpr IndexKind kind = IndexKind::naive;
    static constexpr std::size_t item_footprint = sizeof(NodeId) + sizeof(double) + sizeof(std::uint32_t);

    NaiveIndex() = default;
    explicit NaiveIndex(const IndexOptions&) {}

    void reserve(std::size_t n) {
        nodes_.reserve(n);
        masses_.reserve(n);
        position_.reserve(n);
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }
    bool contains(NodeId node) const noexcept { return position_.contains(node); }
    double total_mass() const noexcept { return total_; }
    double mass(NodeId node) const { return masses_[position_.at(node)]; }

    void insert(NodeId node, double mass) {
        detail::check_mass(mass);
        position_.claim(node, static_cast<std::uint32_t>(nodes_.size()));
        nodes_.push_back(node);
        masses_.push_back(mass);
        total_ += mass;
    }

    void increment(NodeId node, double new_mass) {
        const auto slot = position_.at(node);
        const double extra = new_mass - masses_[slot];
        if (!(extra >= 0.0) || !std::isfinite(new_mass))
            throw MonotonicityError("naive index: mass of node " + std::to_string(node) + " may only increase");
        masses_[slot] = new_mass;
        total_ += extra;
    }

    template <class Random>
    NodeId sample(Random& rng) const {
        return sample_at(rng.uniform());
    }

    NodeId sample_at(double u) const {
        if (nodes_.empty() || !(total_ > 0.0))
            throw SamplingError("naive index: cannot sample from an empty or zero-mass index");
        const double target = u * total_;
        double observed = 0.0;
        for (std::size_t slot = 0; slot < nodes_.size(); ++slot) {
            observed += masses_[slot];
            if (target < observed)
                return nodes_[slot];
        }
        // Rounding: fall back to the last item with positive mass.
        for (std::size_t slot = nodes_.size(); slot-- > 0;)
            if (masses_[slot] > 0.0)
                return nodes_[slot];
        return nodes_.back();
    }

    ValidationReport validate() const {
        ValidationReport report;
        report.items = nodes_.size();
        double exact = 0.0;
        for (std::size_t slot = 0; slot < nodes_.size(); ++slot) {
            exact += masses_[slot];
            if (!position_.contains(nodes_[slot]) || position_[nodes_[slot]] != slot)
                report.position_map_ok = false;
        }
        report.max_relative_deviation = detail::relative_deviation(total_, exact);
        return report;
    }

private:
    std::vector<NodeId> nodes_;
    std::vector<double> masses_;
    detail::PositionMap position_;
    double total_ = 0.0;
};

} // namespace pagen
