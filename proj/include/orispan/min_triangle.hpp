#pragma once

// (1+eps1)-approximation of the minimum-perimeter triangle containing two
// query points, answered with approximate nearest-neighbour queries.
//
// The query deletes p and q from the index, asks for an approximate nearest
// neighbour r of p, and either returns the triangle through r (when r is far
// relative to |pq|) or scans a grid of cells covering the hypercube of side
// 3*alpha*|pq| centred at p, keeping the best triangle over the cell-centre
// neighbours. p and q are re-inserted on every exit path.
//
// Two refinements keep the grid scan cheap without touching the guarantee:
// the neighbours of q and of the pq-midpoint seed the running best, and a
// cell is skipped when no point inside it could beat the best perimeter
// found so far. The cell that contains the optimal third point always
// survives the skip test, which is what the approximation bound needs.

#include <cmath>
#include <vector>

#include "orispan/ann.hpp"
#include "orispan/geometry.hpp"

namespace orispan {

struct TriangleQueryConfig {
    double eps1 = 0.5;
    double eps2 = 0.25;   // ANN slack, eps1/2
    double alpha = 8.0;   // far-neighbour cutoff, 4/eps1
    double eps3 = 0.0;    // grid cell side factor, 2/(3*sqrt(d)) * eps1

    static TriangleQueryConfig defaults(double eps1, std::size_t dim) {
        if (!(eps1 > 0.0 && eps1 < 2.0))
            throw UsageError("triangle query: eps1 must be in (0,2)");
        if (dim < 1) throw UsageError("triangle query: dimension must be positive");
        TriangleQueryConfig cfg;
        cfg.eps1 = eps1;
        cfg.eps2 = eps1 / 2.0;
        cfg.alpha = 4.0 / eps1;
        cfg.eps3 = 2.0 / (3.0 * std::sqrt(double(dim))) * eps1;
        return cfg;
    }

    // Overriding the derived constants voids the proven bound; the CLI only
    // exposes this in practical mode.
    static TriangleQueryConfig with_overrides(double eps1, double eps2, double alpha,
                                              double eps3) {
        if (!(eps1 > 0.0 && eps1 < 2.0))
            throw UsageError("triangle query: eps1 must be in (0,2)");
        if (!(alpha > 2.0)) throw UsageError("triangle query: alpha must exceed 2");
        if (!(eps2 > 0.0) || !(eps3 > 0.0))
            throw UsageError("triangle query: eps2 and eps3 must be positive");
        return {eps1, eps2, alpha, eps3};
    }
};

struct TriangleQueryStats {
    std::size_t ann_queries = 0;
    std::size_t cells_enumerated = 0;
    std::size_t cells_queried = 0;
    bool far_case = false;
};

inline double distance_to_box(std::span<const double> pt, std::span<const double> lo,
                              std::span<const double> hi) {
    double sq = 0.0;
    for (std::size_t a = 0; a < pt.size(); ++a) {
        double delta = 0.0;
        if (pt[a] < lo[a]) delta = lo[a] - pt[a];
        else if (pt[a] > hi[a]) delta = pt[a] - hi[a];
        sq += delta * delta;
    }
    return std::sqrt(sq);
}

namespace detail {

class ReinsertGuard {
public:
    ReinsertGuard(AnnIndex& index, Index p, Index q) : index_(index), p_(p), q_(q) {
        index_.erase(p_);
        index_.erase(q_);
    }
    ~ReinsertGuard() {
        index_.insert(p_);
        index_.insert(q_);
    }
    ReinsertGuard(const ReinsertGuard&) = delete;
    ReinsertGuard& operator=(const ReinsertGuard&) = delete;

private:
    AnnIndex& index_;
    Index p_, q_;
};

} // namespace detail

inline TriangleTriple approx_min_triangle(AnnIndex& index, const PointSet& ps, Index p,
                                          Index q, const TriangleQueryConfig& cfg,
                                          TriangleQueryStats* stats = nullptr) {
    if (p == q) throw UsageError("approx_min_triangle: query points must be distinct");
    if (ps.size() < 3)
        throw UsageError("approx_min_triangle: no triangle exists (need at least 3 points)");
    TriangleQueryStats local;
    TriangleQueryStats& st = stats ? *stats : local;
    st = {};

    const std::size_t d = ps.dim();
    const auto pp = ps[p];
    const auto qq = ps[q];
    const double dpq = distance(pp, qq);

    detail::ReinsertGuard guard(index, p, q);

    const auto query = [&](std::span<const double> at) {
        ++st.ann_queries;
        return index.query(at, cfg.eps2);
    };

    const Index r = query(pp);
    if (distance(pp, ps[r]) > cfg.alpha * dpq) {
        st.far_case = true;
        return make_triple(ps, p, q, r);
    }

    TriangleTriple best = make_triple(ps, p, q, r);
    const auto consider = [&](Index cand) {
        if (cand == p || cand == q) return; // deleted, but guard against ties
        const double perim = dpq + (distance(pp, ps[cand]) + distance(qq, ps[cand]));
        if (perim < best.perimeter) best = {p, q, cand, perim};
    };

    std::vector<double> mid(d);
    for (std::size_t a = 0; a < d; ++a) mid[a] = (pp[a] + qq[a]) / 2.0;
    consider(query(qq));
    consider(query(mid));

    // Grid of ceil(3*alpha/eps3) cells per axis, centred at p.
    const double cell = cfg.eps3 * dpq;
    const double cube_side = 3.0 * cfg.alpha * dpq;
    const long cells_per_axis = long(std::ceil(cube_side / cell - 1e-12));
    std::vector<double> origin(d);
    for (std::size_t a = 0; a < d; ++a)
        origin[a] = pp[a] - double(cells_per_axis) * cell / 2.0;

    // Any third point that could still improve the best triangle lies within
    // (best - |pq|) / 2 of the pq-midpoint; restrict the scan to the cells
    // meeting that ball, inflated for rounding.
    const double radius0 = (best.perimeter - dpq) / 2.0 * (1.0 + 1e-9) + cell;
    std::vector<long> lo_cell(d), hi_cell(d), at(d);
    for (std::size_t a = 0; a < d; ++a) {
        lo_cell[a] = std::max(0L, long(std::floor((mid[a] - radius0 - origin[a]) / cell)));
        hi_cell[a] = std::min(cells_per_axis - 1,
                              long(std::floor((mid[a] + radius0 - origin[a]) / cell)));
        at[a] = lo_cell[a];
        if (lo_cell[a] > hi_cell[a]) return best; // ball misses the grid entirely
    }

    std::vector<double> center(d), cell_lo(d), cell_hi(d);
    while (true) {
        ++st.cells_enumerated;
        for (std::size_t a = 0; a < d; ++a) {
            cell_lo[a] = origin[a] + double(at[a]) * cell;
            cell_hi[a] = cell_lo[a] + cell;
            center[a] = cell_lo[a] + cell / 2.0;
        }
        const double lb = distance_to_box(pp, cell_lo, cell_hi) +
                          distance_to_box(qq, cell_lo, cell_hi);
        if (lb <= (best.perimeter - dpq) * (1.0 + 1e-9)) {
            ++st.cells_queried;
            consider(query(center));
        }
        // Row-major odometer: the last axis runs fastest.
        std::size_t a = d;
        while (a > 0) {
            --a;
            if (++at[a] <= hi_cell[a]) break;
            at[a] = lo_cell[a];
            if (a == 0) return best;
        }
    }
}

inline double distance_to_box(std::span<const double> pt, std::span<const double> lo,
                              std::span<const double> hi) {
    double sq = 0.0;
    for (std::size_t a = 0; a < pt.size(); ++a) {
        double delta = 0.0;
        if (pt[a] < lo[a]) delta = lo[a] - pt[a];
        else if (pt[a] > hi[a]) delta = pt[a] - hi[a];
        sq += delta * delta;
    }
    return std::sqrt(sq);
}

} // namespace orispan
