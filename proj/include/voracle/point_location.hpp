#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "voracle/mssp.hpp"
#include "voracle/voronoi.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Point location over a coarse Voronoi dual: a balanced edge split tree
//  of the diagram plus per-internal-node corner distances. A query walks
//  the split tree; at each step three weighted distance probes pick the
//  nearest corner site and one order probe against that site's shortest
//  path tree picks the side, so a query costs O(log diagram) probes.
// ════════════════════════════════════════════════════════════════════════

struct PointLocation {
    std::uint32_t site = kNone;
    Weight dist;
};

class PlIndex {
public:
    struct Node {
        std::int32_t edge = -1;               // diagram edge split here
        std::array<std::int32_t, 2> kid{-1, -1};  // component with endpoint a, with b
    };

    PlIndex() = default;

    const VoronoiDual& diagram() const { return vd_; }
    std::int32_t root() const { return root_; }
    const Node& node(std::int32_t i) const { return nodes_[i]; }
    std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
    /// Longest root-to-leaf path in the split tree, 0 for a lone node.
    std::uint32_t height() const { return height_; }
    bool empty() const { return nodes_.empty(); }
    /// omega(site j) + dist(site j, corner j) at internal diagram node i.
    Weight corner_cost(std::int32_t i, std::uint32_t j) const { return cost_[i][j]; }

    friend PlIndex build_pl_index(const MsspHandle&, const AdditiveWeights&, VoronoiDual);

private:
    VoronoiDual vd_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    std::uint32_t height_ = 0;
    std::vector<std::array<Weight, 3>> cost_;  // by diagram node id, leaves unused
};

/// Splits the diagram tree recursively at an edge leaving both sides at
/// most two thirds of the edges (ties to the smallest edge id), so the
/// split tree's height is logarithmic in the diagram size. Caches the
/// corner distances of every internal diagram node. An empty diagram
/// (fewer than two nonempty cells) yields an empty index.
PlIndex build_pl_index(const MsspHandle& h, const AdditiveWeights& w, VoronoiDual vd);

/// Owner site of vertex v under the diagram's weights and its weighted
/// distance omega(s) + dist(s, v). Exact, including the tie rule.
///
/// Descent: at the split edge's internal diagram node, the corner site
/// nearest to v (three probes) owns a shortest path to its corner; v's
/// region hangs on one side of that path. On the path itself v belongs
/// to that site and the walk commits to the corner's own slot; off the
/// path one ancestor or preorder probe against the site's tree picks
/// the side. The walk ends when a side has no further splits, where the
/// remaining node's sites are compared directly.
///
/// Throws invalid_argument on an empty index (a single cell covers
/// everything and the diagram does not name it) or a foreign vertex.
PointLocation point_locate(const PlIndex& idx, const MsspHandle& h, const AdditiveWeights& w,
                           Vertex v);

}  // namespace voracle
