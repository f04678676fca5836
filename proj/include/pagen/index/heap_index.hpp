#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pagen/index/common.hpp"

namespace pagen {

/// Augmented binary max-heap over node masses, stored in a dynamic array.
///
/// Every slot carries the node mass and the mass of the subtree rooted at
/// it. Sampling walks the implicit tree in-order (left subtree, item, right
/// subtree) and needs only subtree masses, so it is exact whether or not the
/// heap order holds. Increment is increase-key with mass-preserving
/// exchanges; Insert appends and adds the new mass to every ancestor without
/// sifting up, so an inserted item heavier than its parent leaves the heap
/// order violated until that item is next incremented. most_probable() is
/// exact only while the order holds, which is the case whenever new items
/// enter no heavier than their parents.
class HeapIndex {
public:
    static constexpr IndexKind kind = IndexKind::heap;

    struct Item {
        NodeId node;
        double mass;
        double subtree_mass;
    };

    static constexpr std::size_t item_footprint = sizeof(Item) + sizeof(std::uint32_t);

    HeapIndex() = default;
    explicit HeapIndex(const IndexOptions&) {}

    void reserve(std::size_t n) {
        items_.reserve(n);
        position_.reserve(n);
    }

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    bool contains(NodeId node) const noexcept { return position_.contains(node); }
    double total_mass() const noexcept { return items_.empty() ? 0.0 : items_.front().subtree_mass; }
    double mass(NodeId node) const { return items_[position_.at(node)].mass; }

    void insert(NodeId node, double mass) {
        detail::check_mass(mass);
        position_.claim(node, static_cast<std::uint32_t>(items_.size()));
        items_.push_back({node, mass, mass});
        for (std::size_t slot = items_.size() - 1; slot != 0;) {
            slot = parent(slot);
            items_[slot].subtree_mass += mass;
        }
    }

    void increment(NodeId node, double new_mass) {
        std::size_t slot = position_.at(node);
        const double extra = new_mass - items_[slot].mass;
        if (!(extra >= 0.0) || !std::isfinite(new_mass))
            throw MonotonicityError("heap index: mass of node " + std::to_string(node) + " may only increase");
        items_[slot].mass = new_mass;
        items_[slot].subtree_mass += extra;
        while (slot != 0 && items_[parent(slot)].mass < items_[slot].mass) {
            const std::size_t up = parent(slot);
            items_[up].subtree_mass += extra;
            exchange(slot, up);
            slot = up;
        }
        while (slot != 0) {
            slot = parent(slot);
            items_[slot].subtree_mass += extra;
        }
    }

    template <class Random>
    NodeId sample(Random& rng) const {
        return sample_at(rng.uniform());
    }

    /// Deterministic core of sample(): the node whose mass interval contains u * total.
    NodeId sample_at(double u) const {
        if (items_.empty() || !(total_mass() > 0.0))
            throw SamplingError("heap index: cannot sample from an empty or zero-mass index");
        const double target = u * total_mass();
        const std::size_t n = items_.size();
        double observed = 0.0;
        std::size_t slot = 0;
        for (;;) {
            const std::size_t left = 2 * slot + 1;
            if (left < n) {
                if (target < observed + items_[left].subtree_mass) {
                    slot = left;
                    continue;
                }
                observed += items_[left].subtree_mass;
            }
            observed += items_[slot].mass;
            if (target < observed)
                return items_[slot].node;
            const std::size_t right = left + 1;
            if (right >= n)
                return items_[slot].node; // rounding pushed u past the last item
            slot = right;
        }
    }

    /// Root item. Constant time.
    NodeId most_probable() const {
        if (items_.empty())
            throw SamplingError("heap index: empty");
        return items_.front().node;
    }

    ValidationReport validate() const {
        ValidationReport report;
        report.items = items_.size();
        std::vector<double> exact(items_.size());
        for (std::size_t slot = items_.size(); slot-- > 0;) {
            double sum = items_[slot].mass;
            const std::size_t left = 2 * slot + 1;
            if (left < items_.size())
                sum += exact[left];
            if (left + 1 < items_.size())
                sum += exact[left + 1];
            exact[slot] = sum;
            report.max_relative_deviation = std::max(
                report.max_relative_deviation, detail::relative_deviation(items_[slot].subtree_mass, sum));
            if (slot != 0 && items_[parent(slot)].mass < items_[slot].mass)
                ++report.heap_violations;
            if (!position_.contains(items_[slot].node) || position_[items_[slot].node] != slot)
                report.position_map_ok = false;
        }
        return report;
    }

    std::span<const Item> items() const noexcept { return items_; }

    /// Test hook: overwrite the stored subtree mass of the slot holding `node`.
    void corrupt_subtree_mass(NodeId node, double value) { items_[position_.at(node)].subtree_mass = value; }

private:
    static constexpr std::size_t parent(std::size_t slot) noexcept { return (slot - 1) / 2; }

    double subtree_at(std::size_t slot) const noexcept {
        return slot < items_.size() ? items_[slot].subtree_mass : 0.0;
    }

    // Swap the (node, mass) payloads of a child and its parent, then rebuild
    // both subtree masses from the children now beneath them.
    void exchange(std::size_t child, std::size_t up) {
        std::swap(items_[child].node, items_[up].node);
        std::swap(items_[child].mass, items_[up].mass);
        position_[items_[child].node] = static_cast<std::uint32_t>(child);
        position_[items_[up].node] = static_cast<std::uint32_t>(up);
        items_[child].subtree_mass =
            items_[child].mass + subtree_at(2 * child + 1) + subtree_at(2 * child + 2);
        items_[up].subtree_mass = items_[up].mass + subtree_at(2 * up + 1) + subtree_at(2 * up + 2);
    }

    std::vector<Item> items_;
    detail::PositionMap position_;
};

} // namespace pagen
