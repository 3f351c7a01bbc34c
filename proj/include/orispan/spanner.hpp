#pragma once

// Sparse oriented (2+eps)-spanner: compute an s-WSPD, pick up to two points
// per side of every pair, approximate the minimum-perimeter triangle for
// each picked pair, and greedily orient the union of the triangle edges.
//
// With the theorem defaults eps1 = eps/4 and s = 96/eps the oriented
// dilation of the result is at most 2+eps; practical mode trades the proven
// bound for speed.

#include <chrono>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orispan/ann.hpp"
#include "orispan/min_triangle.hpp"
#include "orispan/orientation.hpp"
#include "orispan/wspd.hpp"

namespace orispan {

enum class SpannerMode { Theorem, Practical };

inline const char* to_string(SpannerMode m) {
    return m == SpannerMode::Theorem ? "theorem" : "practical";
}

struct SpannerConfig {
    double eps = 1.0;
    SpannerMode mode = SpannerMode::Theorem;
    std::optional<double> eps1_override;
    std::optional<double> s_override;

    double eps1() const {
        if (eps1_override) return *eps1_override;
        return mode == SpannerMode::Practical ? 0.1 : eps / 4.0;
    }
    double separation() const {
        if (s_override) return *s_override;
        return mode == SpannerMode::Practical ? 4.0 : 96.0 / eps;
    }

    void validate() const {
        if (!(eps > 0.0 && eps < 2.0))
            throw UsageError("spanner: eps must be in (0,2)");
        if (mode == SpannerMode::Theorem && (eps1_override || s_override))
            throw UsageError("spanner: theorem mode does not allow eps1/s overrides");
        if (eps1_override && !(*eps1_override > 0.0 && *eps1_override < 2.0))
            throw UsageError("spanner: eps1 must be in (0,2)");
        if (s_override && !(*s_override > 0.0))
            throw UsageError("spanner: s must be positive");
    }
};

struct SpannerStats {
    std::size_t wspd_pairs = 0;
    std::size_t triples = 0;          // distinct anchored pairs handed to the orienter
    std::size_t edges = 0;
    std::size_t triangle_queries = 0; // ANN queries spent in triangle approximations
    double seconds_wspd = 0.0;
    double seconds_triangles = 0.0;
    double seconds_orient = 0.0;
};

struct SpannerResult {
    OrientedGraph graph;
    std::vector<TriangleTriple> triples;
    SpannerStats stats;
};

inline SpannerResult build_oriented_spanner(const PointSet& ps, const SpannerConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto seconds_since = [](clock::time_point t0) {
        return std::chrono::duration<double>(clock::now() - t0).count();
    };

    cfg.validate();
    if (ps.size() < 2) throw UsageError("spanner: need at least 2 points");

    SpannerResult result;
    auto t0 = clock::now();
    const SplitTree tree = build_split_tree(ps);
    const std::vector<WellSeparatedPair> pairs = compute_wspd(tree, cfg.separation());
    result.stats.wspd_pairs = pairs.size();
    result.stats.seconds_wspd = seconds_since(t0);

    if (ps.size() == 2) {
        // No triangle exists; a single fallback-oriented edge is all there is.
        OrientedGraph g(2);
        g.add_edge(0, 1);
        result.graph = std::move(g);
        result.stats.edges = 1;
        return result;
    }

    t0 = clock::now();
    AnnIndex index(ps);
    const TriangleQueryConfig tri_cfg = TriangleQueryConfig::defaults(cfg.eps1(), ps.dim());

    // The same anchored pair can be picked for many WSPD pairs (both points
    // sharing a tree node, say); the index restoration guarantee makes the
    // query a pure function of the pair, so compute each pair once.
    std::unordered_map<std::uint64_t, std::uint32_t> seen;
    TriangleQueryStats tstats;
    for (const auto& wsp : pairs) {
        const auto [a_picks, b_picks] = pick_representatives(tree, wsp);
        std::array<Index, 4> picked{};
        std::size_t k = 0;
        for (Index i : a_picks.picked()) picked[k++] = i;
        for (Index i : b_picks.picked()) picked[k++] = i;
        std::sort(picked.begin(), picked.begin() + k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const Index p = picked[i], q = picked[j];
                const std::uint64_t key = detail::edge_key(p, q);
                if (!seen.emplace(key, 0u).second) continue;
                result.triples.push_back(
                    approx_min_triangle(index, ps, p, q, tri_cfg, &tstats));
                result.stats.triangle_queries += tstats.ann_queries;
            }
        }
    }
    result.stats.triples = result.triples.size();
    result.stats.seconds_triangles = seconds_since(t0);

    t0 = clock::now();
    result.graph = greedy_orient(ps, cfg.eps1(), result.triples);
    result.stats.edges = result.graph.edge_count();
    result.stats.seconds_orient = seconds_since(t0);
    return result;
}

} // namespace orispan
