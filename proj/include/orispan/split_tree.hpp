#pragma once

// Fair split tree: every node owns a contiguous range of the leaf order,
// leaves hold exactly one point, and internal nodes split the tight bounding
// box of their points at the midpoint of its longest side (ties on side
// length go to the lowest axis).

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "orispan/geometry.hpp"

namespace orispan {

struct SplitTreeNode {
    Index left = kNoIndex;
    Index right = kNoIndex;
    Index first = 0;          // offset into SplitTree::leaf_order
    Index count = 0;
    Index min_index = kNoIndex;        // smallest point index in the subtree
    Index second_min_index = kNoIndex; // second smallest, kNoIndex for leaves
    double radius = 0.0;               // half-diagonal of the bounding box

    bool is_leaf() const { return left == kNoIndex; }
};

class SplitTree {
public:
    const PointSet& points() const { return *ps_; }
    std::size_t dim() const { return ps_->dim(); }
    Index root() const { return 0; }
    std::size_t node_count() const { return nodes_.size(); }
    const SplitTreeNode& node(Index id) const { return nodes_[id]; }

    std::span<const Index> points_of(Index id) const {
        const auto& nd = nodes_[id];
        return {leaf_order_.data() + nd.first, nd.count};
    }

    std::span<const double> box_lo(Index id) const {
        return {lo_.data() + std::size_t(id) * dim(), dim()};
    }
    std::span<const double> box_hi(Index id) const {
        return {hi_.data() + std::size_t(id) * dim(), dim()};
    }
    std::span<const double> ball_center(Index id) const {
        return {center_.data() + std::size_t(id) * dim(), dim()};
    }

    // Longest side of the node's bounding box.
    double longest_side(Index id) const {
        const auto lo = box_lo(id), hi = box_hi(id);
        double best = 0.0;
        for (std::size_t a = 0; a < dim(); ++a) best = std::max(best, hi[a] - lo[a]);
        return best;
    }

    friend SplitTree build_split_tree(const PointSet& ps);

private:
    const PointSet* ps_ = nullptr;
    std::vector<SplitTreeNode> nodes_;
    std::vector<Index> leaf_order_;
    std::vector<double> lo_, hi_, center_;

    Index new_node(Index first, Index count) {
        const std::size_t d = ps_->dim();
        nodes_.emplace_back();
        nodes_.back().first = first;
        nodes_.back().count = count;
        lo_.resize(lo_.size() + d);
        hi_.resize(hi_.size() + d);
        center_.resize(center_.size() + d);
        return Index(nodes_.size() - 1);
    }

    void set_box(Index id) {
        const std::size_t d = ps_->dim();
        auto& nd = nodes_[id];
        double* lo = lo_.data() + std::size_t(id) * d;
        double* hi = hi_.data() + std::size_t(id) * d;
        double* ctr = center_.data() + std::size_t(id) * d;
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::numeric_limits<double>::infinity();
            hi[a] = -std::numeric_limits<double>::infinity();
        }
        for (Index k = nd.first; k < nd.first + nd.count; ++k) {
            const auto pt = (*ps_)[leaf_order_[k]];
            for (std::size_t a = 0; a < d; ++a) {
                lo[a] = std::min(lo[a], pt[a]);
                hi[a] = std::max(hi[a], pt[a]);
            }
        }
        double sq = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            ctr[a] = lo[a] + (hi[a] - lo[a]) / 2.0;
            const double h = (hi[a] - lo[a]) / 2.0;
            sq += h * h;
        }
        nd.radius = std::sqrt(sq);
    }

    Index build(Index first, Index count) {
        const Index id = new_node(first, count);
        set_box(id);
        if (count == 1) {
            nodes_[id].min_index = leaf_order_[first];
            return id;
        }
        const std::size_t d = ps_->dim();
        const double* lo = lo_.data() + std::size_t(id) * d;
        const double* hi = hi_.data() + std::size_t(id) * d;
        std::size_t axis = 0;
        double side = hi[0] - lo[0];
        for (std::size_t a = 1; a < d; ++a) {
            if (hi[a] - lo[a] > side) {
                side = hi[a] - lo[a];
                axis = a;
            }
        }
        const double mid = lo[axis] + side / 2.0;
        auto begin = leaf_order_.begin() + first;
        auto split = std::stable_partition(begin, begin + count, [&](Index i) {
            return ps_->coord(i, axis) < mid;
        });
        const Index left_count = Index(split - begin);
        if (left_count == 0 || left_count == count)
            throw InternalError("split tree: degenerate partition (duplicate points?)");
        const Index l = build(first, left_count);
        const Index r = build(first + left_count, count - left_count);
        nodes_[id].left = l;
        nodes_[id].right = r;
        // Two smallest point indices of the subtree, merged from the children.
        std::array<Index, 4> cand{nodes_[l].min_index, nodes_[l].second_min_index,
                                  nodes_[r].min_index, nodes_[r].second_min_index};
        std::sort(cand.begin(), cand.end());
        nodes_[id].min_index = cand[0];
        nodes_[id].second_min_index = cand[1];
        return id;
    }
};

inline SplitTree build_split_tree(const PointSet& ps) {
    if (ps.empty())
        throw UsageError("build_split_tree: point set must not be empty");
    SplitTree tree;
    tree.ps_ = &ps;
    tree.leaf_order_.resize(ps.size());
    std::iota(tree.leaf_order_.begin(), tree.leaf_order_.end(), Index{0});
    tree.nodes_.reserve(2 * ps.size());
    tree.lo_.reserve(2 * ps.size() * ps.dim());
    tree.hi_.reserve(2 * ps.size() * ps.dim());
    tree.center_.reserve(2 * ps.size() * ps.dim());
    tree.build(0, Index(ps.size()));
    return tree;
}

} // namespace orispan
