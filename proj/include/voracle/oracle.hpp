#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "voracle/mssp.hpp"
#include "voracle/point_location.hpp"
#include "voracle/rdivision.hpp"
#include "voracle/voronoi.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Single-level exact distance oracle.
//
//  The graph is cut into blocks. Each region keeps its complement
//  (everything outside the region's interior) behind a shortest-path
//  handle whose hole is the freed block face; per boundary vertex q it
//  stores the weights ω_q(s) = dist(q, s), the dual Voronoi diagram of
//  those weights over the complement, and a point-location index. The
//  region itself is kept as its own arcs plus a boundary-to-boundary
//  clique carrying exact complement distances, so a single search
//  inside the augmented region prices every boundary exit exactly.
//
//  A query from u prices the boundary of u's region, then either reads
//  v off the same search (same region) or adds ω_q(s) + dist(s, v) for
//  the located site s and minimizes over q. Every candidate is a real
//  path length and a shortest path decomposes at its last boundary
//  crossing, so the minimum is exact. Unreachable targets stay at
//  infinity. Expects perturbed arc weights (unique shortest paths).
// ════════════════════════════════════════════════════════════════════════

class Oracle {
public:
    struct BoundaryData {
        AdditiveWeights omega;       // per complement-hole site
        PlIndex index;               // empty when the diagram has at most one cell
        std::uint32_t lone = kNone;  // the single nonempty cell when index is empty
    };

    struct RegionData {
        Complement comp;                     // unused when the region has no boundary
        std::unique_ptr<MsspHandle> handle;  // over comp.tri with hole comp.hole
        std::vector<BoundaryData> per_site;  // by hole site index
        std::vector<Weight> boundary_table;  // dist over the complement, row p, column q
        // augmented region graph over local ids (positions in Region::vertices)
        std::vector<std::uint32_t> adj_off;
        std::vector<std::pair<std::uint32_t, Weight>> adj;

        mutable std::mutex mu;
        mutable std::unordered_map<Vertex, std::vector<Weight>> rows;  // search cache by source
    };

    /// Exact distance from u to v; infinity when unreachable.
    Weight query(Vertex u, Vertex v) const;

    const PlanarGraph& graph() const { return g_; }
    const RDivision& division() const { return div_; }
    std::uint32_t region_count() const { return static_cast<std::uint32_t>(div_.regions.size()); }
    const RegionData& region_data(std::uint32_t i) const { return *data_[i]; }
    const Weight& boundary_distance(std::uint32_t region, std::uint32_t p, std::uint32_t q) const;

    /// Counted shortest-path probes over all region handles.
    std::uint64_t probe_count() const;

    friend Oracle build_oracle(const PlanarGraph& g, std::uint32_t r);
    friend Oracle load_oracle(const std::string& dir);

private:
    const std::vector<Weight>& row_from(std::uint32_t region, Vertex u) const;
    void finish_regions();  // complements, handles, clique rows; shared by build and load

    PlanarGraph g_;
    RDivision div_;
    std::vector<std::vector<std::uint32_t>> local_of_;  // per region: full vertex -> local id
    std::vector<std::unique_ptr<RegionData>> data_;
};

/// Divides, runs one exact search from every boundary vertex for its
/// weight row, builds every diagram and index, and assembles the
/// augmented region graphs. Throws what the division or the handles
/// throw.
Oracle build_oracle(const PlanarGraph& g, std::uint32_t r);

/// Directory layout: graph.pg (text graph), regions.json (version, r,
/// vertex and boundary lists), weights.bin (fixed little-endian weight
/// rows and boundary tables behind a magic/version header), and
/// diagrams/r<i>_q<k>.json (one dual diagram per boundary vertex).
/// Writing the same built oracle twice produces identical bytes.
void save_oracle(const Oracle& oracle, const std::string& dir);
Oracle load_oracle(const std::string& dir);

}  // namespace voracle
