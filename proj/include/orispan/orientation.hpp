#pragma once

// Greedy orientation of a triangle list: process triangles in ascending
// perimeter order, orienting each as a directed 3-cycle whenever the edges
// oriented so far permit, and fall back to low-index -> high-index for the
// rest. For every anchored triple (p,q;r) whose perimeter is within
// (1+eps1) of the optimum, the result satisfies odil(p,q) <= 2+2*eps1.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "orispan/oriented_graph.hpp"

namespace orispan {

namespace detail {

enum class EdgeState : std::int8_t { Unoriented = 0, LowToHigh = 1, HighToLow = 2 };

inline std::uint64_t edge_key(Index u, Index v) {
    const Index lo = std::min(u, v), hi = std::max(u, v);
    return (std::uint64_t(lo) << 32) | hi;
}

// Direction (u -> v) expressed relative to the canonical (low, high) key.
inline EdgeState directed_state(Index u, Index v) {
    return u < v ? EdgeState::LowToHigh : EdgeState::HighToLow;
}

} // namespace detail

inline OrientedGraph greedy_orient(const PointSet& ps, double eps1,
                                   const std::vector<TriangleTriple>& triples) {
    using detail::EdgeState;
    if (!(eps1 > 0.0)) throw UsageError("greedy_orient: eps1 must be positive");
    const Index n = Index(ps.size());

    std::unordered_map<std::uint64_t, EdgeState> edge_state;
    edge_state.reserve(triples.size() * 3);
    for (const auto& t : triples) {
        if (t.p == t.q || t.q == t.r || t.p == t.r)
            throw UsageError("greedy_orient: triple vertices must be pairwise distinct");
        if (t.p >= n || t.q >= n || t.r >= n)
            throw UsageError("greedy_orient: triple vertex out of range");
        edge_state.emplace(detail::edge_key(t.p, t.q), EdgeState::Unoriented);
        edge_state.emplace(detail::edge_key(t.q, t.r), EdgeState::Unoriented);
        edge_state.emplace(detail::edge_key(t.r, t.p), EdgeState::Unoriented);
    }

    // Ascending by perimeter; equal perimeters keep their position in the list.
    std::vector<std::uint32_t> order(triples.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return triples[a].perimeter < triples[b].perimeter;
    });

    const auto state_of = [&](Index u, Index v) {
        return edge_state.find(detail::edge_key(u, v))->second;
    };
    const auto orient = [&](Index u, Index v) {
        edge_state.find(detail::edge_key(u, v))->second = detail::directed_state(u, v);
    };

    // A directed 3-cycle a->b->c->a is compatible iff no already-oriented
    // edge of the triangle disagrees with it.
    const auto try_cycle = [&](Index a, Index b, Index c) {
        const std::array<std::pair<Index, Index>, 3> arcs{{{a, b}, {b, c}, {c, a}}};
        for (auto [u, v] : arcs) {
            const EdgeState st = state_of(u, v);
            if (st != EdgeState::Unoriented && st != detail::directed_state(u, v))
                return false;
        }
        for (auto [u, v] : arcs)
            if (state_of(u, v) == EdgeState::Unoriented) orient(u, v);
        return true;
    };

    for (std::uint32_t ti : order) {
        const auto& t = triples[ti];
        const bool untouched = state_of(t.p, t.q) == EdgeState::Unoriented &&
                               state_of(t.q, t.r) == EdgeState::Unoriented &&
                               state_of(t.r, t.p) == EdgeState::Unoriented;
        if (untouched) {
            // Fresh triangle: orient (p,q) low -> high and close the cycle.
            const Index a = std::min(t.p, t.q), b = std::max(t.p, t.q);
            try_cycle(a, b, t.r);
        } else {
            if (!try_cycle(t.p, t.q, t.r)) try_cycle(t.p, t.r, t.q);
        }
    }

    // Leftover edges of skipped triangles: low index -> high index.
    std::vector<std::uint64_t> keys;
    keys.reserve(edge_state.size());
    for (const auto& [key, st] : edge_state) keys.push_back(key);
    std::sort(keys.begin(), keys.end());

    OrientedGraph g(n);
    for (std::uint64_t key : keys) {
        const Index lo = Index(key >> 32), hi = Index(key & 0xffffffffu);
        const EdgeState st = edge_state.find(key)->second;
        if (st == EdgeState::HighToLow) g.add_edge(hi, lo);
        else g.add_edge(lo, hi);
    }
    return g;
}

} // namespace orispan
