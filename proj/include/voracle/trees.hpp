#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "voracle/planar_graph.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Shortest paths.
// ════════════════════════════════════════════════════════════════════════

struct SsspResult {
    std::vector<Weight> dist;   // per vertex, infinite when unreachable
    std::vector<Dart> parent;   // dart arriving at v from its parent, kNone at source
};

/// Deterministic Dijkstra over usable darts (heap keyed by weight then
/// vertex id). With perturbed weights the returned tree is the unique
/// shortest-path tree.
SsspResult sssp(const PlanarGraph& g, Vertex source);

/// Tie audit: returns a vertex with two distinct optimal in-arcs, or
/// nothing when the shortest-path tree is unique.
std::optional<Vertex> find_tie_vertex(const PlanarGraph& g, const SsspResult& r);

// ════════════════════════════════════════════════════════════════════════
//  Rooted spanning tree with Euler intervals.
// ════════════════════════════════════════════════════════════════════════

class RootedTree {
public:
    RootedTree() = default;

    /// `parent[v]` is the dart arriving at v from its tree parent (kNone
    /// at the root). Children are visited in clockwise rotation order:
    /// at the root starting from `root_start` (a dart with tail root,
    /// default rotation slot 0), elsewhere starting just after the dart
    /// back to the parent. The tree must span the graph.
    RootedTree(const PlanarGraph& g, Vertex root, std::vector<Dart> parent,
               Dart root_start = kNone);

    Vertex root() const { return root_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }
    Dart parent_dart(Vertex v) const { return parent_[v]; }
    Vertex parent(Vertex v) const {
        return parent_[v] == kNone ? kNone : g_->tail(parent_[v]);
    }
    std::uint32_t depth(Vertex v) const { return depth_[v]; }
    std::uint32_t euler_in(Vertex v) const { return in_[v]; }
    std::uint32_t euler_out(Vertex v) const { return out_[v]; }
    bool is_ancestor(Vertex a, Vertex b) const {
        return in_[a] <= in_[b] && out_[b] <= out_[a];
    }
    bool dart_in_tree(Dart d) const { return parent_[g_->head(d)] == d; }
    bool edge_in_tree(EdgeId e) const {
        return dart_in_tree(PlanarGraph::dart_of(e)) ||
               dart_in_tree(PlanarGraph::dart_of(e, true));
    }
    /// Child-side endpoint of a tree edge.
    Vertex deeper_end(EdgeId e) const {
        Dart d = PlanarGraph::dart_of(e);
        return dart_in_tree(d) ? g_->head(d) : g_->head(PlanarGraph::twin(d));
    }
    /// The dart running parent -> child for a tree edge.
    Dart down_dart(EdgeId e) const {
        Dart d = PlanarGraph::dart_of(e);
        return dart_in_tree(d) ? d : PlanarGraph::twin(d);
    }

    /// Visits the darts v -> child in the tree's child order.
    template <class F>
    void for_child_darts(Vertex v, F&& f) const {
        std::uint32_t deg = g_->degree(v);
        std::uint32_t start;
        if (v == root_) {
            start = root_start_ == kNone ? 0 : g_->rot_index(root_start_);
        } else {
            start = g_->rot_index(PlanarGraph::twin(parent_[v])) + 1;
        }
        for (std::uint32_t k = 0; k < deg; ++k) {
            std::uint32_t i = start + k;
            if (i >= deg) i -= deg;
            Dart d = g_->rot_at(v, i);
            if (dart_in_tree(d)) f(d);
        }
    }

    const PlanarGraph& graph() const { return *g_; }
    const std::vector<Dart>& parents() const { return parent_; }
    Dart root_start() const { return root_start_; }

private:
    const PlanarGraph* g_ = nullptr;
    Vertex root_ = kNone;
    Dart root_start_ = kNone;
    std::vector<Dart> parent_;
    std::vector<std::uint32_t> depth_, in_, out_;
};

// ════════════════════════════════════════════════════════════════════════
//  Cotree: the dual spanning tree formed by non-tree edges.
// ════════════════════════════════════════════════════════════════════════

class Cotree {
public:
    Cotree() = default;

    /// The duals of edges outside `tree` connect all faces of g into a
    /// tree, rooted here at `root_face`. Supports level ancestors and
    /// lowest common ancestors through binary lifting.
    Cotree(const PlanarGraph& g, const RootedTree& tree, FaceId root_face);

    FaceId root() const { return root_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }
    /// Primal edge whose dual joins f to its parent face; kNone at root.
    EdgeId parent_edge(FaceId f) const { return parent_edge_[f]; }
    FaceId parent(FaceId f) const { return parent_[f]; }
    std::uint32_t depth(FaceId f) const { return depth_[f]; }
    FaceId ancestor(FaceId f, std::uint32_t k) const;
    FaceId lca(FaceId a, FaceId b) const;

private:
    FaceId root_ = kNone;
    std::vector<EdgeId> parent_edge_;
    std::vector<FaceId> parent_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::vector<FaceId>> up_;  // binary lifting tables
};

// ════════════════════════════════════════════════════════════════════════
//  Fundamental cycle of a tree edge in the cotree.
// ════════════════════════════════════════════════════════════════════════

/// A rootward walk in the cotree: `len` parent steps starting at face
/// `start`. Position 0 is the step nearest to `start`.
struct CyclePath {
    FaceId start = kNone;
    std::uint32_t len = 0;
};

struct FundamentalCycle {
    // side[0] starts right of the parent->child dart, side[1] left
    CyclePath side[2];
    FaceId meet = kNone;  // lowest common ancestor of the two start faces
};

/// Both faces bounding tree edge e walk rootward until they meet; the
/// two walks plus e form the cycle separating the subtree below e from
/// the rest.
FundamentalCycle fundamental_cycle(const PlanarGraph& g, const RootedTree& t, const Cotree& c,
                                   EdgeId e);

EdgeId path_edge(const Cotree& c, const CyclePath& p, std::uint32_t i);
FaceId path_face(const Cotree& c, const CyclePath& p, std::uint32_t i);

// ════════════════════════════════════════════════════════════════════════
//  Edge-centroid decomposition of a bounded-degree tree.
// ════════════════════════════════════════════════════════════════════════

class CentroidTree {
public:
    struct Node {
        EdgeId edge = kNone;
        std::int32_t above = -1;  // side containing the shallower endpoint
        std::int32_t below = -1;  // side containing the deeper endpoint
    };

    CentroidTree() = default;

    /// Recursively splits the tree at an edge whose removal leaves both
    /// components at most two thirds of the whole (ties broken by the
    /// smallest edge id). Requires maximum degree 3 in `tree`.
    CentroidTree(const PlanarGraph& g, const RootedTree& tree);

    std::int32_t root() const { return root_; }
    const Node& node(std::int32_t i) const { return nodes_[i]; }
    std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
    std::uint32_t max_depth() const { return max_depth_; }

private:
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    std::uint32_t max_depth_ = 0;
};

}  // namespace voracle
