#pragma once

#include <cstdint>
#include <vector>

#include "voracle/planar_graph.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Axis-aligned block division with shared boundary rings.
//
//  Coordinate lines are cut into runs of about sqrt(r) lines; a region
//  covers one block of runs widened by one line on every side that has
//  a neighbor, so adjacent regions overlap on two lines and every
//  vertex falls inside at least one ring. The boundary is a simple
//  cycle threaded through the vertices on the widened rim (degree
//  gadgets from normalization are crossed along their zero-length
//  edges), and the region is that ring plus everything the ring
//  encloses. Cutting the enclosed part out of the graph frees exactly
//  one face whose walk is the ring, so every edge entering a region
//  from outside lands on its boundary. Instances whose lattice has
//  gaps on some rim are rejected with a diagnostic. A target at or
//  above the vertex count yields one region with an empty boundary.
// ════════════════════════════════════════════════════════════════════════

struct Region {
    std::vector<Vertex> vertices;  // ring plus enclosed, ascending
    std::vector<Vertex> boundary;  // ring in hole-cycle order; empty for a lone region
    std::vector<Vertex> interior;  // strictly enclosed, ascending
};

struct RDivision {
    std::uint32_t r = 0;                   // requested region size
    std::vector<Region> regions;
    std::vector<std::uint32_t> region_of;  // per vertex: one region containing it
};

/// Builds the overlapping block regions described above. Every vertex
/// is covered by at least one region; region_of prefers the region
/// that strictly encloses the vertex. Throws invalid_argument with a
/// diagnostic when the instance has no coordinates or a ring cannot be
/// closed, verified against its freed face.
RDivision build_r_division(const PlanarGraph& g, std::uint32_t r);

/// Everything outside one region's ring: the enclosed interior is cut
/// away, the freed face becomes the hole, and every other face is
/// triangulated with infinite chords. `sites` lists the hole cycle in
/// face order using full-graph ids; Region::boundary stores the same
/// order.
struct Complement {
    Subgraph sub;               // extraction from the full graph
    PlanarGraph tri;            // sub with every face except the hole triangulated
    FaceId hole = kNone;        // the freed face in tri
    std::vector<Vertex> sites;  // full-graph ids in hole face order
};

Complement build_complement(const PlanarGraph& g, const Region& region);

}  // namespace voracle
