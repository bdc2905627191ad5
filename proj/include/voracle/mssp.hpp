#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "voracle/trees.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Shortest path trees from every vertex of one distinguished face (the
//  hole), behind a single handle with a query probe counter.
//
//  Per-site data (tree, distances, cotree, centroid decomposition) is
//  materialized on first use and cached; answers are pure functions of
//  the graph and hole, so eviction and rebuilding never change results.
// ════════════════════════════════════════════════════════════════════════

struct SiteData {
    RootedTree tree;          // rooted at the site, children clockwise from the hole corner
    std::vector<Weight> dist; // exact distances, infinity disallowed (see build_mssp)
    Cotree cotree;            // rooted at the hole face
    CentroidTree centroid;
};

struct MsspOptions {
    // resident per-site structures before the cache is flushed; live
    // references handed out earlier stay valid (shared ownership)
    std::uint32_t resident_cap = 64;
};

class MsspHandle {
public:
    /// Requires every face except `hole` to be a triangle and every
    /// vertex to be reachable from every site. The hole cycle must be
    /// simple; its vertices become the sites, indexed in face order.
    MsspHandle(const PlanarGraph& g, FaceId hole, MsspOptions opt = {});

    const PlanarGraph& graph() const { return *g_; }
    FaceId hole() const { return hole_; }

    // ── cyclic layout of the hole ────────────────────────────────────
    std::uint32_t site_count() const { return static_cast<std::uint32_t>(sites_.size()); }
    Vertex site(std::uint32_t idx) const { return sites_[idx]; }
    /// Cyclic index of a hole vertex, kNone elsewhere.
    std::uint32_t site_index(Vertex v) const { return site_index_[v]; }
    /// Cyclic index of a hole edge (edge idx runs site idx -> idx+1), kNone elsewhere.
    std::uint32_t hole_edge_index(EdgeId e) const { return edge_index_[e]; }
    EdgeId hole_edge(std::uint32_t idx) const { return hole_edges_[idx]; }
    /// Face-cycle dart from site idx to site idx+1.
    Dart hole_dart(std::uint32_t idx) const { return hole_darts_[idx]; }

    // ── counted queries, one probe each ──────────────────────────────
    Weight distance(std::uint32_t s, Vertex v) const;
    Dart parent_dart(std::uint32_t s, Vertex v) const;
    bool is_ancestor(std::uint32_t s, Vertex a, Vertex b) const;
    /// Position of v in the clockwise preorder of s's tree. Hole
    /// vertices with unrelated tree paths are ordered like their cyclic
    /// indices taken from s.
    std::uint32_t preorder(std::uint32_t s, Vertex v) const;
    std::uint32_t cotree_depth(std::uint32_t s, FaceId f) const;
    FaceId cotree_ancestor(std::uint32_t s, FaceId f, std::uint32_t k) const;
    EdgeId cotree_parent_edge(std::uint32_t s, FaceId f) const;
    FaceId cotree_lca(std::uint32_t s, FaceId a, FaceId b) const;

    // ── structural access, uncounted ─────────────────────────────────
    /// Shared ownership keeps the data alive across cache flushes.
    std::shared_ptr<const SiteData> site_data(std::uint32_t s) const;

    std::uint64_t probe_count() const { return probes_.load(std::memory_order_relaxed); }
    void reset_probes() const { probes_.store(0, std::memory_order_relaxed); }

private:
    const SiteData& touch(std::uint32_t s) const;  // probe bump + fetch

    const PlanarGraph* g_;
    FaceId hole_;
    MsspOptions opt_;
    std::vector<Vertex> sites_;
    std::vector<EdgeId> hole_edges_;
    std::vector<Dart> hole_darts_;
    std::vector<std::uint32_t> site_index_;   // per vertex
    std::vector<std::uint32_t> edge_index_;   // per edge

    mutable std::mutex mu_;
    mutable std::vector<std::shared_ptr<const SiteData>> cache_;
    mutable std::uint32_t resident_ = 0;
    mutable std::atomic<std::uint64_t> probes_{0};
};

inline MsspHandle build_mssp(const PlanarGraph& g, FaceId hole, MsspOptions opt = {}) {
    return MsspHandle(g, hole, opt);
}

}  // namespace voracle
