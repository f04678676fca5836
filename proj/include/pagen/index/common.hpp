#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "pagen/errors.hpp"
#include "pagen/rng.hpp"

namespace pagen {

using NodeId = std::uint32_t;

enum class IndexKind { heap, treap_rand, treap_mass, naive, array };

inline std::string_view to_string(IndexKind kind) {
    switch (kind) {
    case IndexKind::heap: return "heap";
    case IndexKind::treap_rand: return "treap-rand";
    case IndexKind::treap_mass: return "treap-mass";
    case IndexKind::naive: return "naive";
    case IndexKind::array: return "array";
    }
    return "?";
}

inline IndexKind parse_index_kind(std::string_view text) {
    for (auto k : {IndexKind::heap, IndexKind::treap_rand, IndexKind::treap_mass, IndexKind::naive, IndexKind::array})
        if (to_string(k) == text)
            return k;
    throw ParameterError("unknown index kind '" + std::string(text) +
                         "' (expected heap, treap-rand, treap-mass, naive or array)");
}

/// Construction parameters shared by all index kinds; each kind reads what it needs.
struct IndexOptions {
    std::uint64_t seed = 1;         // treap-rand priorities, treap tie-breaks
    double uniform_fitness = 0.0;   // repeat-array only: the common additive fitness
};

/// Result of a full recomputation of an index's aggregates.
struct ValidationReport {
    double max_relative_deviation = 0.0; // over every stored subtree/total sum
    std::size_t items = 0;
    std::size_t sort_violations = 0;     // treap kinds
    std::size_t heap_violations = 0;     // treap-mass/treap-rand: hard errors; heap kind: informational
    bool heap_order_enforced = false;    // whether heap_violations counts as a failure
    bool position_map_ok = true;

    bool ok(double tolerance = 1e-9) const noexcept {
        return max_relative_deviation < tolerance && sort_violations == 0 && position_map_ok &&
               (!heap_order_enforced || heap_violations == 0);
    }
};

namespace detail {

inline constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

inline double relative_deviation(double stored, double exact) {
    const double diff = std::abs(stored - exact);
    if (diff == 0.0)
        return 0.0;
    const double scale = std::max(std::abs(exact), std::abs(stored));
    return scale > 0.0 ? diff / scale : diff;
}

inline void check_mass(double mass) {
    if (!(mass >= 0.0) || !std::isfinite(mass))
        throw ParameterError("index: mass must be finite and >= 0");
}

/// Dense node -> slot map.
class PositionMap {
public:
    void reserve(std::size_t n) { slots_.reserve(n); }

    bool contains(NodeId node) const noexcept { return node < slots_.size() && slots_[node] != npos; }

    std::uint32_t at(NodeId node) const {
        if (!contains(node))
            throw UsageError("index: unknown node " + std::to_string(node));
        return slots_[node];
    }

    void claim(NodeId node, std::uint32_t slot) {
        if (contains(node))
            throw UsageError("index: node " + std::to_string(node) + " already present");
        if (node >= slots_.size())
            slots_.resize(static_cast<std::size_t>(node) + 1, npos);
        slots_[node] = slot;
    }

    std::uint32_t& operator[](NodeId node) noexcept { return slots_[node]; }
    std::uint32_t operator[](NodeId node) const noexcept { return slots_[node]; }
    std::size_t extent() const noexcept { return slots_.size(); }

private:
    std::vector<std::uint32_t> slots_;
};

} // namespace detail

/// Operations every sampling index provides to the generators.
template <class T>
concept SamplingIndex = requires(T index, const T cindex, NodeId node, double mass, Rng& rng) {
    { T(IndexOptions{}) };
    { index.insert(node, mass) };
    { index.increment(node, mass) };
    { index.sample(rng) } -> std::same_as<NodeId>;
    { cindex.mass(node) } -> std::convertible_to<double>;
    { cindex.total_mass() } -> std::convertible_to<double>;
    { cindex.size() } -> std::convertible_to<std::size_t>;
    { cindex.validate() } -> std::same_as<ValidationReport>;
    { T::kind } -> std::convertible_to<IndexKind>;
    { T::item_footprint } -> std::convertible_to<std::size_t>;
};

} // namespace pagen
