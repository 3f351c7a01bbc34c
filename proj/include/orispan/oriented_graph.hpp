#pragma once

// Directed graph with the orientation invariant: for any two vertices at
// most one of (u,v), (v,u) is present, and there are no self-loops.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "orispan/errors.hpp"
#include "orispan/geometry.hpp"

namespace orispan {

class OrientedGraph {
public:
    OrientedGraph() = default;
    explicit OrientedGraph(Index n) : out_(n) {}

    Index vertex_count() const { return Index(out_.size()); }
    std::size_t edge_count() const { return m_; }

    const std::vector<Index>& out_neighbours(Index u) const { return out_[u]; }

    bool has_edge(Index u, Index v) const {
        if (u >= out_.size() || v >= out_.size()) return false;
        return std::binary_search(out_[u].begin(), out_[u].end(), v);
    }

    void add_edge(Index u, Index v) {
        if (u >= out_.size() || v >= out_.size())
            throw UsageError("graph: edge endpoint out of range");
        if (u == v) throw UsageError("graph: self-loops are not allowed");
        if (has_edge(u, v)) throw UsageError("graph: duplicate edge");
        if (has_edge(v, u))
            throw UsageError("graph: both directions of an edge are not allowed");
        auto& adj = out_[u];
        adj.insert(std::upper_bound(adj.begin(), adj.end(), v), v);
        ++m_;
    }

    template <class Visit>
    void for_each_edge(Visit&& visit) const {
        for (Index u = 0; u < out_.size(); ++u)
            for (Index v : out_[u]) visit(u, v);
    }

    // Edges sorted by (u,v); the on-disk order.
    std::vector<std::pair<Index, Index>> edges() const {
        std::vector<std::pair<Index, Index>> result;
        result.reserve(m_);
        for_each_edge([&](Index u, Index v) { result.emplace_back(u, v); });
        return result;
    }

    bool operator==(const OrientedGraph& other) const {
        return out_ == other.out_;
    }

private:
    std::vector<std::vector<Index>> out_;
    std::size_t m_ = 0;
};

} // namespace orispan
