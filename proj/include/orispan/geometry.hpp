#pragma once

// Points in R^d, the Euclidean metric, triangle perimeters, and the exact
// minimum-perimeter-triangle query.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "orispan/errors.hpp"

namespace orispan {

using Index = std::uint32_t;
inline constexpr Index kNoIndex = std::numeric_limits<Index>::max();

using Point = std::vector<double>;

inline double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw UsageError("distance: dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double delta = a[i] - b[i];
        sq += delta * delta;
    }
    return std::sqrt(sq);
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double delta = a[i] - b[i];
        sq += delta * delta;
    }
    return sq;
}

// |ab| + (|ac| + |bc|). The association is fixed so that every module that
// builds a triangle on the anchor pair (a,b) produces bit-identical
// perimeters for the same third point.
inline double triangle_perimeter(std::span<const double> a, std::span<const double> b,
                                 std::span<const double> c) {
    return distance(a, b) + (distance(a, c) + distance(b, c));
}

// Indexed points with a fixed dimension. Indices are stable for the lifetime
// of the set; duplicate coordinates are rejected at construction.
class PointSet {
public:
    PointSet() = default;

    explicit PointSet(std::vector<Point> rows) {
        if (rows.empty()) {
            dim_ = 0;
            return;
        }
        dim_ = rows.front().size();
        if (dim_ < 1)
            throw ValidationError("point 0: dimension must be at least 1");
        coords_.reserve(rows.size() * dim_);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != dim_)
                throw ValidationError("point " + std::to_string(i) + ": expected " +
                                      std::to_string(dim_) + " coordinates, got " +
                                      std::to_string(rows[i].size()));
            for (double c : rows[i]) {
                if (!std::isfinite(c))
                    throw ValidationError("point " + std::to_string(i) +
                                          ": non-finite coordinate");
                coords_.push_back(c);
            }
        }
        check_duplicates();
    }

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> operator[](Index i) const {
        return {coords_.data() + std::size_t(i) * dim_, dim_};
    }

    double coord(Index i, std::size_t axis) const {
        return coords_[std::size_t(i) * dim_ + axis];
    }

    double dist(Index a, Index b) const { return distance((*this)[a], (*this)[b]); }

private:
    void check_duplicates() const {
        const std::size_t n = size();
        std::vector<Index> idx(n);
        std::iota(idx.begin(), idx.end(), Index{0});
        std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
            return std::lexicographical_compare(
                coords_.begin() + std::size_t(a) * dim_, coords_.begin() + std::size_t(a + 1) * dim_,
                coords_.begin() + std::size_t(b) * dim_, coords_.begin() + std::size_t(b + 1) * dim_);
        });
        for (std::size_t k = 1; k < n; ++k) {
            const Index a = idx[k - 1], b = idx[k];
            if (std::equal(coords_.begin() + std::size_t(a) * dim_,
                           coords_.begin() + std::size_t(a + 1) * dim_,
                           coords_.begin() + std::size_t(b) * dim_))
                throw ValidationError("duplicate point: indices " +
                                      std::to_string(std::min(a, b)) + " and " +
                                      std::to_string(std::max(a, b)));
        }
    }

    std::vector<double> coords_;
    std::size_t dim_ = 0;
};

// An anchored triangle (p,q;r) with its cached perimeter.
struct TriangleTriple {
    Index p = kNoIndex;
    Index q = kNoIndex;
    Index r = kNoIndex;
    double perimeter = 0.0;
};

// Canonical perimeter of the triangle anchored at (p,q) with third point x.
inline double triple_perimeter(const PointSet& ps, Index p, Index q, Index x) {
    return triangle_perimeter(ps[p], ps[q], ps[x]);
}

inline TriangleTriple make_triple(const PointSet& ps, Index p, Index q, Index r) {
    return {p, q, r, triple_perimeter(ps, p, q, r)};
}

// Minimum-perimeter triangle containing p and q, by linear scan over the
// remaining points. Ties on the leg sum |px|+|qx| go to the smallest index.
inline TriangleTriple exact_min_triangle(const PointSet& ps, Index p, Index q) {
    if (p == q)
        throw UsageError("exact_min_triangle: query points must be distinct");
    if (ps.size() < 3)
        throw UsageError("exact_min_triangle: no triangle exists (need at least 3 points)");
    const auto pp = ps[p];
    const auto qq = ps[q];
    Index best = kNoIndex;
    double best_legs = std::numeric_limits<double>::infinity();
    for (Index x = 0; x < ps.size(); ++x) {
        if (x == p || x == q) continue;
        const double legs = distance(pp, ps[x]) + distance(qq, ps[x]);
        if (legs < best_legs) {
            best_legs = legs;
            best = x;
        }
    }
    return make_triple(ps, p, q, best);
}

} // namespace orispan
