#pragma once

// Well-separated pair decomposition over a fair split tree, plus the
// deterministic representative selection used by the spanner and the
// dilation approximation.
//
// The separation certificate covers both sides by balls of the same radius
// rho = max of the two bounding-box half-diagonals, centred at the box
// centres; a pair is emitted once the distance between the balls is at
// least s * rho.

#include <utility>
#include <vector>

#include "orispan/split_tree.hpp"

namespace orispan {

struct WellSeparatedPair {
    Index a_node = kNoIndex;
    Index b_node = kNoIndex;
    double s = 0.0;      // separation parameter the pair was certified with
    double radius = 0.0; // common covering-ball radius rho of the certificate
};

namespace detail {

inline bool well_separated(const SplitTree& tree, Index u, Index v, double s, double& rho_out) {
    const double rho = std::max(tree.node(u).radius, tree.node(v).radius);
    const double center_dist = distance(tree.ball_center(u), tree.ball_center(v));
    rho_out = rho;
    return center_dist - 2.0 * rho >= s * rho;
}

} // namespace detail

// Emits every pair exactly once: recursion starts from the two children of
// each internal node, and always splits the side with the longer bounding
// box (ties split the first side).
template <class Emit>
void for_each_well_separated_pair(const SplitTree& tree, double s, Emit&& emit) {
    if (s <= 0.0)
        throw UsageError("wspd: separation parameter must be positive");
    std::vector<std::pair<Index, Index>> stack;
    for (Index id = 0; id < tree.node_count(); ++id) {
        const auto& nd = tree.node(id);
        if (!nd.is_leaf()) stack.emplace_back(nd.left, nd.right);
    }
    while (!stack.empty()) {
        auto [u, v] = stack.back();
        stack.pop_back();
        double rho = 0.0;
        if (detail::well_separated(tree, u, v, s, rho)) {
            emit(WellSeparatedPair{u, v, s, rho});
            continue;
        }
        if (tree.longest_side(u) < tree.longest_side(v)) std::swap(u, v);
        stack.emplace_back(tree.node(u).left, v);
        stack.emplace_back(tree.node(u).right, v);
    }
}

inline std::vector<WellSeparatedPair> compute_wspd(const SplitTree& tree, double s) {
    std::vector<WellSeparatedPair> pairs;
    for_each_well_separated_pair(tree, s, [&](const WellSeparatedPair& p) {
        pairs.push_back(p);
    });
    return pairs;
}

// min{|side|, 2} points per side: the node's representative (smallest point
// index in the subtree) plus, when present, the lowest-index other point.
struct SidePicks {
    std::array<Index, 2> idx{kNoIndex, kNoIndex};
    int count = 0;

    std::span<const Index> picked() const { return {idx.data(), std::size_t(count)}; }
};

inline SidePicks pick_side(const SplitTree& tree, Index node_id) {
    const auto& nd = tree.node(node_id);
    SidePicks picks;
    picks.idx[0] = nd.min_index;
    picks.count = 1;
    if (nd.second_min_index != kNoIndex) {
        picks.idx[1] = nd.second_min_index;
        picks.count = 2;
    }
    return picks;
}

inline std::pair<SidePicks, SidePicks> pick_representatives(const SplitTree& tree,
                                                            const WellSeparatedPair& pair) {
    return {pick_side(tree, pair.a_node), pick_side(tree, pair.b_node)};
}

} // namespace orispan
