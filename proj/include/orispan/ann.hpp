#pragma once

// Dynamic (1+eps)-approximate nearest-neighbour index over a subset of a
// PointSet: a bucketed box-decomposition tree with lazy deletion and a full
// rebuild once tombstones outnumber live points. Single writer; concurrent
// read-only queries are fine between mutations.

#include <algorithm>
#include <cmath>
#include <vector>

#include "orispan/geometry.hpp"

namespace orispan {

class AnnIndex {
    static constexpr std::size_t kBucketCap = 8;

    struct Node {
        Index left = kNoIndex;
        Index right = kNoIndex;
        std::uint32_t axis = 0;
        double split = 0.0;
        std::vector<Index> bucket; // leaf payload, may contain tombstoned entries

        bool is_leaf() const { return left == kNoIndex; }
    };

public:
    explicit AnnIndex(const PointSet& ps) : ps_(&ps) {
        member_.assign(ps.size(), false);
        in_structure_.assign(ps.size(), false);
        std::vector<Index> all(ps.size());
        std::iota(all.begin(), all.end(), Index{0});
        for (Index i : all) member_[i] = true;
        live_ = all.size();
        rebuild(std::move(all));
    }

    AnnIndex(const PointSet& ps, std::vector<Index> members) : ps_(&ps) {
        member_.assign(ps.size(), false);
        in_structure_.assign(ps.size(), false);
        for (Index i : members) {
            if (member_[i]) throw UsageError("ann: duplicate member " + std::to_string(i));
            member_[i] = true;
        }
        live_ = members.size();
        rebuild(std::move(members));
    }

    std::size_t size() const { return live_; }
    bool empty() const { return live_ == 0; }
    bool contains(Index i) const { return i < member_.size() && member_[i]; }

    void insert(Index i) {
        if (contains(i))
            throw UsageError("ann: insert of point " + std::to_string(i) + " already present");
        member_[i] = true;
        ++live_;
        if (in_structure_[i]) {
            --tombs_;
            return;
        }
        insert_structural(i);
    }

    void erase(Index i) {
        if (!contains(i))
            throw UsageError("ann: delete of point " + std::to_string(i) + " not present");
        member_[i] = false;
        --live_;
        ++tombs_;
        if (tombs_ > live_) compact();
    }

    // (1+eps)-approximate nearest member of q. Ties on distance go to the
    // smaller point index, so eps = 0 queries depend only on the membership.
    Index query(std::span<const double> q, double eps) const {
        if (eps < 0.0) throw UsageError("ann: eps must be nonnegative");
        if (empty()) throw UsageError("ann: no neighbour (index is empty)");
        Best best;
        const double shrink = 1.0 / ((1.0 + eps) * (1.0 + eps));
        search(root_, q, shrink, best);
        return best.idx;
    }

    double query_distance(std::span<const double> q, double eps) const {
        return distance(q, (*ps_)[query(q, eps)]);
    }

private:
    struct Best {
        Index idx = kNoIndex;
        double dist_sq = std::numeric_limits<double>::infinity();
    };

    std::span<const double> box_lo(Index id) const {
        return {lo_.data() + std::size_t(id) * ps_->dim(), ps_->dim()};
    }
    std::span<const double> box_hi(Index id) const {
        return {hi_.data() + std::size_t(id) * ps_->dim(), ps_->dim()};
    }

    double box_dist_sq(Index id, std::span<const double> q) const {
        const auto lo = box_lo(id), hi = box_hi(id);
        double sq = 0.0;
        for (std::size_t a = 0; a < q.size(); ++a) {
            double d = 0.0;
            if (q[a] < lo[a]) d = lo[a] - q[a];
            else if (q[a] > hi[a]) d = q[a] - hi[a];
            sq += d * d;
        }
        return sq;
    }

    void search(Index id, std::span<const double> q, double shrink, Best& best) const {
        const Node& nd = nodes_[id];
        if (nd.is_leaf()) {
            for (Index i : nd.bucket) {
                if (!member_[i]) continue;
                const double sq = squared_distance(q, (*ps_)[i]);
                if (sq < best.dist_sq || (sq == best.dist_sq && i < best.idx)) {
                    best.dist_sq = sq;
                    best.idx = i;
                }
            }
            return;
        }
        const Index near = q[nd.axis] < nd.split ? nd.left : nd.right;
        const Index far = near == nd.left ? nd.right : nd.left;
        if (box_dist_sq(near, q) < best.dist_sq * shrink) search(near, q, shrink, best);
        if (box_dist_sq(far, q) < best.dist_sq * shrink) search(far, q, shrink, best);
    }

    Index new_node() {
        nodes_.emplace_back();
        lo_.resize(lo_.size() + ps_->dim(), std::numeric_limits<double>::infinity());
        hi_.resize(hi_.size() + ps_->dim(), -std::numeric_limits<double>::infinity());
        return Index(nodes_.size() - 1);
    }

    void set_tight_box(Index id, const std::vector<Index>& items) {
        const std::size_t d = ps_->dim();
        double* lo = lo_.data() + std::size_t(id) * d;
        double* hi = hi_.data() + std::size_t(id) * d;
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::numeric_limits<double>::infinity();
            hi[a] = -std::numeric_limits<double>::infinity();
        }
        for (Index i : items) {
            const auto pt = (*ps_)[i];
            for (std::size_t a = 0; a < d; ++a) {
                lo[a] = std::min(lo[a], pt[a]);
                hi[a] = std::max(hi[a], pt[a]);
            }
        }
    }

    void expand_box(Index id, std::span<const double> pt) {
        const std::size_t d = ps_->dim();
        double* lo = lo_.data() + std::size_t(id) * d;
        double* hi = hi_.data() + std::size_t(id) * d;
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], pt[a]);
            hi[a] = std::max(hi[a], pt[a]);
        }
    }

    Index build(std::vector<Index> items) {
        const Index id = new_node();
        set_tight_box(id, items);
        if (items.size() <= kBucketCap) {
            nodes_[id].bucket = std::move(items);
            return id;
        }
        const auto [axis, mid] = choose_split(id);
        std::vector<Index> ls, rs;
        ls.reserve(items.size());
        rs.reserve(items.size());
        for (Index i : items)
            (ps_->coord(i, axis) < mid ? ls : rs).push_back(i);
        if (ls.empty() || rs.empty()) {
            // Distinct points can still collapse onto one side when the box
            // side is below rounding resolution; an oversized bucket stays
            // correct, only slower.
            nodes_[id].bucket = std::move(items);
            return id;
        }
        const Index l = build(std::move(ls));
        const Index r = build(std::move(rs));
        nodes_[id].left = l;
        nodes_[id].right = r;
        nodes_[id].axis = std::uint32_t(axis);
        nodes_[id].split = mid;
        return id;
    }

    std::pair<std::size_t, double> choose_split(Index id) const {
        const auto lo = box_lo(id), hi = box_hi(id);
        std::size_t axis = 0;
        double side = hi[0] - lo[0];
        for (std::size_t a = 1; a < lo.size(); ++a) {
            if (hi[a] - lo[a] > side) {
                side = hi[a] - lo[a];
                axis = a;
            }
        }
        return {axis, lo[axis] + side / 2.0};
    }

    void insert_structural(Index i) {
        in_structure_[i] = true;
        const auto pt = (*ps_)[i];
        Index id = root_;
        while (true) {
            expand_box(id, pt);
            Node& nd = nodes_[id];
            if (nd.is_leaf()) {
                nd.bucket.push_back(i);
                if (nd.bucket.size() > kBucketCap) split_leaf(id);
                return;
            }
            id = pt[nd.axis] < nd.split ? nd.left : nd.right;
        }
    }

    void split_leaf(Index id) {
        std::vector<Index> items = std::move(nodes_[id].bucket);
        nodes_[id].bucket.clear();
        set_tight_box(id, items);
        const auto [axis, mid] = choose_split(id);
        std::vector<Index> ls, rs;
        for (Index i : items)
            (ps_->coord(i, axis) < mid ? ls : rs).push_back(i);
        if (ls.empty() || rs.empty()) {
            nodes_[id].bucket = std::move(items); // see build(): keep oversized
            return;
        }
        const Index l = build(std::move(ls));
        const Index r = build(std::move(rs));
        nodes_[id].left = l;
        nodes_[id].right = r;
        nodes_[id].axis = std::uint32_t(axis);
        nodes_[id].split = mid;
    }

    void compact() {
        std::vector<Index> members;
        members.reserve(live_);
        for (Index i = 0; i < member_.size(); ++i)
            if (member_[i]) members.push_back(i);
        rebuild(std::move(members));
    }

    void rebuild(std::vector<Index> members) {
        nodes_.clear();
        lo_.clear();
        hi_.clear();
        std::fill(in_structure_.begin(), in_structure_.end(), false);
        tombs_ = 0;
        for (Index i : members) in_structure_[i] = true;
        if (members.empty()) {
            root_ = new_node(); // empty leaf, queries reject before reaching it
            return;
        }
        root_ = build(std::move(members));
    }

    const PointSet* ps_ = nullptr;
    std::vector<Node> nodes_;
    std::vector<double> lo_, hi_;
    std::vector<bool> member_;        // current membership
    std::vector<bool> in_structure_;  // physically present in some bucket
    std::size_t live_ = 0;
    std::size_t tombs_ = 0;
    Index root_ = 0;
};

inline AnnIndex build_ann_index(const PointSet& ps) { return AnnIndex(ps); }

} // namespace orispan
