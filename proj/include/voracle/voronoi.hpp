#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "voracle/planar_graph.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Additively weighted Voronoi partitions over the sites of a hole face,
//  their dual tree representation, and brute-force reference builders.
//
//  Site ids are the cyclic indices of the hole vertices in face order
//  (the same indexing MsspHandle assigns). A weight of infinity removes
//  a site from competition.
// ════════════════════════════════════════════════════════════════════════

struct AdditiveWeights {
    std::vector<Weight> omega;  // by site index; infinity disables the site
};

struct CellAssignment {
    std::vector<std::uint32_t> owner;  // per vertex: winning site index
    std::vector<Weight> dist;          // the winning weighted distance
};

/// Ties go to the larger (omega, site index) pair.
/// beats(candidate, incumbent) at equal distance.
bool weighted_tie_beats(const AdditiveWeights& w, std::uint32_t cand, std::uint32_t inc);

/// One Dijkstra per site, then a per-vertex argmin with the tie rule.
/// Requires a simple hole cycle; every vertex must be reachable from
/// some enabled site.
CellAssignment assign_cells_bruteforce(const PlanarGraph& g, FaceId hole,
                                       const AdditiveWeights& w);

/// Edges whose endpoints lie in different cells (their duals form the
/// fine diagram), sorted by edge id.
std::vector<EdgeId> extract_vd0(const PlanarGraph& g, const CellAssignment& cells);

// ── dual Voronoi tree ────────────────────────────────────────────────

struct VoronoiDual {
    struct Node {
        FaceId face = kNone;                     // trichromatic face, or hole for leaf copies
        bool leaf = false;                       // copy of the hole's dual vertex
        std::array<Vertex, 3> verts{kNone, kNone, kNone};
        std::array<std::uint32_t, 3> sites{kNone, kNone, kNone};
        std::array<std::int32_t, 3> nbr{-1, -1, -1};  // incident edges, leaf uses slot 0
    };
    struct Edge {
        std::int32_t a = -1, b = -1;             // endpoint node ids
        std::uint32_t site_s = kNone, site_t = kNone;  // separated cells, s < t
        std::vector<EdgeId> fine;                // contracted primal edge ids, a to b
        EdgeId first() const { return fine.front(); }
        EdgeId last() const { return fine.back(); }
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<std::int32_t> leaves;            // leaf node ids in hole cyclic order

    std::uint32_t internal_count() const;
    std::uint32_t leaf_count() const { return static_cast<std::uint32_t>(leaves.size()); }
    /// Edge separating cells s and t, -1 when the cells are not adjacent.
    std::int32_t edge_between(std::uint32_t s, std::uint32_t t) const;
    std::string to_json() const;
};

/// Contracts the degree-2 chains of the fine diagram into the dual tree
/// and splits the hole's dual vertex into one leaf per incident edge.
/// Verifies on the way out that the result is a tree whose internal
/// nodes are trichromatic faces.
///
/// Tree shape is equivalent to every cell covering one contiguous
/// stretch of the hole. That holds when the weights are distances from
/// a common source separated from the graph by the hole (every
/// assignment the oracle produces) and for any weights with at most
/// two enabled sites: a two-cell wrap would disconnect the other cell.
/// Three enabled sites already suffice for a wrap (hole owner pattern
/// a,b,c,b), splitting the coarse dual into a forest; that case is
/// rejected with a logic_error rather than silently mis-shaped.
VoronoiDual contract_to_vdstar(const PlanarGraph& g, FaceId hole,
                               const std::vector<EdgeId>& vd0, const CellAssignment& cells);

/// The closed dual cycle separating the cells of sites s and t when all
/// other sites are disabled, as an edge sequence starting from the hole
/// through the smaller-indexed hole crossing. Empty when either cell is
/// empty (degenerate bisector).
std::vector<EdgeId> bisector(const PlanarGraph& g, FaceId hole, std::uint32_t s,
                             std::uint32_t t, const AdditiveWeights& w);

}  // namespace voracle
