#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "pagen/index/common.hpp"

namespace pagen {

enum class TreapPriority {
    random, // classic treap: uniform random priority, balanced in expectation
    mass,   // priority = node mass, ties broken by a random key
};

/// Augmented treap keyed by node id. Items live in a slot array and are
/// linked by slot indexes; each carries its node mass and subtree mass.
/// Both the sort invariant (in-order node ids) and the heap invariant
/// (parent priority >= child priority) hold after every operation.
template <TreapPriority Priority>
class TreapIndex {
public:
    static constexpr IndexKind kind = Priority == TreapPriority::random ? IndexKind::treap_rand : IndexKind::treap_mass;

    struct Item {
        NodeId node;
        std::uint32_t left = detail::npos;
        std::uint32_t right = detail::npos;
        std::uint32_t parent = detail::npos;
        double mass;
        double subtree_mass;
        std::uint64_t tiebreak;
    };

    static constexpr std::size_t item_footprint = sizeof(Item) + sizeof(std::uint32_t);

    TreapIndex() : TreapIndex(IndexOptions{}) {}
    explicit TreapIndex(const IndexOptions& options) : priorities_(mix_seed(options.seed ^ 0x7265617053ULL)) {}

    void reserve(std::size_t n) {
        items_.reserve(n);
        position_.reserve(n);
    }

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    bool contains(NodeId node) const noexcept { return position_.contains(node); }
    double total_mass() const noexcept { return root_ == detail::npos ? 0.0 : items_[root_].subtree_mass; }
    double mass(NodeId node) const { return items_[position_.at(node)].mass; }

    void insert(NodeId node, double mass) {
        detail::check_mass(mass);
        const auto slot = static_cast<std::uint32_t>(items_.size());
        position_.claim(node, slot);
        items_.push_back(Item{node, detail::npos, detail::npos, detail::npos, mass, mass, priorities_()});

        if (root_ == detail::npos) {
            root_ = slot;
            return;
        }
        std::uint32_t cur = root_;
        for (;;) {
            Item& at = items_[cur];
            at.subtree_mass += mass;
            std::uint32_t& next = node < at.node ? at.left : at.right;
            if (next == detail::npos) {
                next = slot;
                items_[slot].parent = cur;
                break;
            }
            cur = next;
        }
        sift_up(slot);
    }

    void increment(NodeId node, double new_mass) {
        const std::uint32_t slot = position_.at(node);
        const double extra = new_mass - items_[slot].mass;
        if (!(extra >= 0.0) || !std::isfinite(new_mass))
            throw MonotonicityError("treap index: mass of node " + std::to_string(node) + " may only increase");
        items_[slot].mass = new_mass;
        for (std::uint32_t cur = slot; cur != detail::npos; cur = items_[cur].parent)
            items_[cur].subtree_mass += extra;
        if constexpr (Priority == TreapPriority::mass)
            sift_up(slot);
    }

    template <class Random>
    NodeId sample(Random& rng) const {
        return sample_at(rng.uniform());
    }

    NodeId sample_at(double u) const {
        if (root_ == detail::npos || !(total_mass() > 0.0))
            throw SamplingError("treap index: cannot sample from an empty or zero-mass index");
        const double target = u * total_mass();
        double observed = 0.0;
        std::uint32_t cur = root_;
        for (;;) {
            const Item& at = items_[cur];
            if (at.left != detail::npos) {
                const double left_mass = items_[at.left].subtree_mass;
                if (target < observed + left_mass) {
                    cur = at.left;
                    continue;
                }
                observed += left_mass;
            }
            observed += at.mass;
            if (target < observed || at.right == detail::npos)
                return at.node;
            cur = at.right;
        }
    }

    /// Deepest root-to-leaf path length; 0 for an empty treap.
    std::size_t height() const {
        std::size_t best = 0;
        std::vector<std::pair<std::uint32_t, std::size_t>> stack;
        if (root_ != detail::npos)
            stack.emplace_back(root_, 1);
        while (!stack.empty()) {
            auto [slot, depth] = stack.back();
            stack.pop_back();
            best = std::max(best, depth);
            if (items_[slot].left != detail::npos)
                stack.emplace_back(items_[slot].left, depth + 1);
            if (items_[slot].right != detail::npos)
                stack.emplace_back(items_[slot].right, depth + 1);
        }
        return best;
    }

    ValidationReport validate() const {
        ValidationReport report;
        report.items = items_.size();
        report.heap_order_enforced = true;
        if (root_ == detail::npos)
            return report;

        // Iterative post-order so children are summed before parents.
        std::vector<double> exact(items_.size(), 0.0);
        std::vector<std::pair<std::uint32_t, bool>> stack{{root_, false}};
        std::size_t visited = 0;
        while (!stack.empty()) {
            auto [slot, expanded] = stack.back();
            stack.pop_back();
            const Item& at = items_[slot];
            if (!expanded) {
                stack.emplace_back(slot, true);
                for (std::uint32_t child : {at.left, at.right}) {
                    if (child == detail::npos)
                        continue;
                    if (items_[child].parent != slot)
                        report.position_map_ok = false;
                    if (higher(child, slot))
                        ++report.heap_violations;
                    stack.emplace_back(child, false);
                }
                continue;
            }
            ++visited;
            double sum = at.mass;
            if (at.left != detail::npos)
                sum += exact[at.left];
            if (at.right != detail::npos)
                sum += exact[at.right];
            exact[slot] = sum;
            report.max_relative_deviation =
                std::max(report.max_relative_deviation, detail::relative_deviation(at.subtree_mass, sum));
            if (!position_.contains(at.node) || position_[at.node] != slot)
                report.position_map_ok = false;
        }
        if (visited != items_.size())
            report.position_map_ok = false;

        // In-order walk must produce strictly increasing node ids.
        std::vector<std::uint32_t> path;
        std::uint32_t cur = root_;
        bool first = true;
        NodeId last = 0;
        while (cur != detail::npos || !path.empty()) {
            while (cur != detail::npos) {
                path.push_back(cur);
                cur = items_[cur].left;
            }
            cur = path.back();
            path.pop_back();
            if (!first && items_[cur].node <= last)
                ++report.sort_violations;
            first = false;
            last = items_[cur].node;
            cur = items_[cur].right;
        }
        return report;
    }

    void corrupt_subtree_mass(NodeId node, double value) { items_[position_.at(node)].subtree_mass = value; }

private:
    bool higher(std::uint32_t a, std::uint32_t b) const noexcept {
        if constexpr (Priority == TreapPriority::random)
            return items_[a].tiebreak > items_[b].tiebreak;
        else
            return std::tie(items_[a].mass, items_[a].tiebreak) > std::tie(items_[b].mass, items_[b].tiebreak);
    }

    double subtree_at(std::uint32_t slot) const noexcept {
        return slot == detail::npos ? 0.0 : items_[slot].subtree_mass;
    }

    void refresh(std::uint32_t slot) noexcept {
        Item& at = items_[slot];
        at.subtree_mass = at.mass + subtree_at(at.left) + subtree_at(at.right);
    }

    // Rotate `slot` above its parent, keeping both subtree masses exact.
    void rotate_up(std::uint32_t slot) noexcept {
        const std::uint32_t up = items_[slot].parent;
        const std::uint32_t grand = items_[up].parent;
        if (items_[up].left == slot) {
            const std::uint32_t moved = items_[slot].right;
            items_[up].left = moved;
            if (moved != detail::npos)
                items_[moved].parent = up;
            items_[slot].right = up;
        } else {
            const std::uint32_t moved = items_[slot].left;
            items_[up].right = moved;
            if (moved != detail::npos)
                items_[moved].parent = up;
            items_[slot].left = up;
        }
        items_[up].parent = slot;
        items_[slot].parent = grand;
        if (grand == detail::npos)
            root_ = slot;
        else if (items_[grand].left == up)
            items_[grand].left = slot;
        else
            items_[grand].right = slot;
        refresh(up);
        refresh(slot);
    }

    void sift_up(std::uint32_t slot) noexcept {
        while (items_[slot].parent != detail::npos && higher(slot, items_[slot].parent))
            rotate_up(slot);
    }

    std::vector<Item> items_;
    detail::PositionMap position_;
    std::uint32_t root_ = detail::npos;
    Rng priorities_;
};

using RandomTreapIndex = TreapIndex<TreapPriority::random>;
using MassTreapIndex = TreapIndex<TreapPriority::mass>;

} // namespace pagen
