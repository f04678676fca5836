#pragma once

#include <type_traits>
#include <utility>

#include "pagen/index/common.hpp"
#include "pagen/index/heap_index.hpp"
#include "pagen/index/naive_index.hpp"
#include "pagen/index/repeat_array_index.hpp"
#include "pagen/index/treap_index.hpp"

namespace pagen {

static_assert(SamplingIndex<HeapIndex>);
static_assert(SamplingIndex<RandomTreapIndex>);
static_assert(SamplingIndex<MassTreapIndex>);
static_assert(SamplingIndex<NaiveIndex>);
static_assert(SamplingIndex<RepeatArrayIndex>);

/// Calls `fn(std::type_identity<Index>{})` with the index type for `kind`.
template <class Fn>
decltype(auto) visit_index_kind(IndexKind kind, Fn&& fn) {
    switch (kind) {
    case IndexKind::heap: return std::forward<Fn>(fn)(std::type_identity<HeapIndex>{});
    case IndexKind::treap_rand: return std::forward<Fn>(fn)(std::type_identity<RandomTreapIndex>{});
    case IndexKind::treap_mass: return std::forward<Fn>(fn)(std::type_identity<MassTreapIndex>{});
    case IndexKind::naive: return std::forward<Fn>(fn)(std::type_identity<NaiveIndex>{});
    case IndexKind::array: return std::forward<Fn>(fn)(std::type_identity<RepeatArrayIndex>{});
    }
    throw UsageError("unknown index kind");
}

/// Heap-only: node at the root. Other kinds have no constant-time notion of it.
template <class Index>
NodeId most_probable(const Index& index) {
    if constexpr (std::is_same_v<Index, HeapIndex>)
        return index.most_probable();
    else
        throw UsageError("most_probable is only supported by the heap index");
}

} // namespace pagen
