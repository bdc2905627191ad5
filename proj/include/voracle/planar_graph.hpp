#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voracle/weight.hpp"

namespace voracle {

using Vertex = std::uint32_t;
using Dart = std::uint32_t;    // arc end; darts 2e and 2e+1 bound edge e
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

constexpr std::uint32_t kNone = 0xffffffffu;

struct ArcSpec {
    Vertex tail = kNone;
    Vertex head = kNone;
    Weight w = Weight::zero();            // tail -> head
    Weight wrev = Weight::infinity();     // head -> tail
};

// ════════════════════════════════════════════════════════════════════════
//  PlanarGraph: a combinatorial embedding of a directed weighted graph.
//
//  Every embedded edge e carries two darts: 2e runs tail -> head and
//  2e+1 runs head -> tail; a direction that is absent or reserved (the
//  triangulation chords) has infinite weight and is skipped by searches.
//  The rotation at a vertex lists its outgoing darts in clockwise order.
//  Faces are the orbits of d -> cw_next(twin(d)); each face lies to the
//  left of its darts.
// ════════════════════════════════════════════════════════════════════════
class PlanarGraph {
public:
    PlanarGraph() = default;

    /// Builds and validates an embedding. `rotations[v]` lists the darts
    /// with tail v in clockwise order. With `simplify` set, parallel arcs
    /// and self-loops are merged/dropped before embedding (lightest
    /// direction survives); internal rebuilds pass false to keep
    /// structural parallels such as triangulation chords or dual edges.
    /// `hole_dart`, if given, designates the face left of that dart.
    PlanarGraph(std::uint32_t n, std::vector<ArcSpec> arcs,
                std::vector<std::vector<Dart>> rotations,
                Dart hole_dart = kNone, std::uint64_t perturb_seed = 0,
                bool simplify = true);

    /// Derives rotations from strictly distinct vertex coordinates.
    static PlanarGraph from_coords(std::uint32_t n, std::vector<ArcSpec> arcs,
                                   std::vector<std::array<double, 2>> coords,
                                   Dart hole_dart = kNone,
                                   std::uint64_t perturb_seed = 0);

    // ── basic queries ──────────────────────────────────────────────────
    std::uint32_t vertex_count() const { return n_; }
    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(head_.size() / 2); }
    std::uint32_t dart_count() const { return static_cast<std::uint32_t>(head_.size()); }
    std::uint32_t face_count() const { return static_cast<std::uint32_t>(face_off_.size() - 1); }

    static Dart twin(Dart d) { return d ^ 1u; }
    static EdgeId edge_of(Dart d) { return d >> 1; }
    static Dart dart_of(EdgeId e, bool rev = false) { return (e << 1) | (rev ? 1u : 0u); }

    Vertex head(Dart d) const { return head_[d]; }
    Vertex tail(Dart d) const { return head_[d ^ 1u]; }
    const Weight& weight(Dart d) const { return weight_[d]; }
    bool usable(Dart d) const { return !weight_[d].is_infinite(); }
    /// True when at least one direction of edge e is traversable.
    bool edge_usable(EdgeId e) const {
        return usable(dart_of(e)) || usable(dart_of(e, true));
    }

    // ── rotation system ────────────────────────────────────────────────
    std::uint32_t degree(Vertex v) const { return rot_off_[v + 1] - rot_off_[v]; }
    std::uint32_t finite_degree(Vertex v) const;
    Dart rot_at(Vertex v, std::uint32_t idx) const { return rot_[rot_off_[v] + idx]; }
    /// Index of dart d within the rotation of its tail.
    std::uint32_t rot_index(Dart d) const { return rot_pos_[d] - rot_off_[tail(d)]; }
    Dart cw_next(Dart d) const {
        Vertex v = tail(d);
        std::uint32_t deg = degree(v), i = rot_pos_[d] - rot_off_[v] + 1;
        return rot_[rot_off_[v] + (i == deg ? 0 : i)];
    }
    Dart cw_prev(Dart d) const {
        Vertex v = tail(d);
        std::uint32_t i = rot_pos_[d] - rot_off_[v];
        return rot_[rot_off_[v] + (i == 0 ? degree(v) - 1 : i - 1)];
    }

    // ── faces ──────────────────────────────────────────────────────────
    /// Next dart along the boundary of the face left of d.
    Dart face_next(Dart d) const { return cw_next(twin(d)); }
    FaceId face_of(Dart d) const { return face_of_[d]; }
    FaceId left_face(EdgeId e) const { return face_of_[dart_of(e)]; }
    FaceId right_face(EdgeId e) const { return face_of_[dart_of(e, true)]; }
    std::uint32_t face_size(FaceId f) const { return face_off_[f + 1] - face_off_[f]; }
    /// Darts of face f in boundary order (face on the left of each).
    const Dart* face_begin(FaceId f) const { return face_darts_.data() + face_off_[f]; }
    const Dart* face_end(FaceId f) const { return face_darts_.data() + face_off_[f + 1]; }
    Dart face_dart(FaceId f, std::uint32_t idx) const { return face_darts_[face_off_[f] + idx]; }

    FaceId infinite_face() const { return infinite_face_; }
    void set_infinite_face(FaceId f);

    // ── coordinates (optional, carried through normalization) ──────────
    bool has_coords() const { return !coords_.empty(); }
    const std::array<double, 2>& coord(Vertex v) const { return coords_[v]; }
    void set_coords(std::vector<std::array<double, 2>> c);

    std::uint64_t perturb_seed() const { return perturb_seed_; }

    /// Assigns tiebreak components from a fixed per-dart hash. Unusable
    /// darts keep tie 0. Idempotent for a fixed seed.
    void perturb(std::uint64_t seed);

    /// Structural audit: rotation bijection, face partition, Euler's
    /// formula, twin involution. Throws on violation.
    void check_invariants() const;

    // Raw views used by serialization and subgraph extraction.
    const std::vector<Weight>& dart_weights() const { return weight_; }
    std::vector<Dart> rotation_of(Vertex v) const {
        return std::vector<Dart>(rot_.begin() + rot_off_[v], rot_.begin() + rot_off_[v + 1]);
    }

private:
    void build_faces();
    void index_rotations();
    void validate() const;

    std::uint32_t n_ = 0;
    std::vector<Vertex> head_;
    std::vector<Weight> weight_;
    std::vector<std::uint32_t> rot_off_;
    std::vector<Dart> rot_;
    std::vector<std::uint32_t> rot_pos_;
    std::vector<FaceId> face_of_;
    std::vector<std::uint32_t> face_off_;
    std::vector<Dart> face_darts_;
    FaceId infinite_face_ = kNone;
    std::vector<std::array<double, 2>> coords_;
    std::uint64_t perturb_seed_ = 0;
};

// ════════════════════════════════════════════════════════════════════════
//  Normalization: bounded finite degree plus triangulated faces.
// ════════════════════════════════════════════════════════════════════════

struct NormalizeResult {
    PlanarGraph graph;
    FaceId hole = kNone;  // image of the designated hole

    std::vector<Vertex> rep;          // original vertex -> first copy
    std::vector<Vertex> orig_vertex;  // copy -> original vertex
    std::vector<EdgeId> orig_edge;    // edge -> original edge id, kNone for new
    std::vector<Vertex> gadget_owner; // edge -> expanded original vertex, else kNone
    std::vector<FaceId> chord_face;   // edge -> pre-normalization face id, else kNone

    // Copies of each original vertex in gadget-path order.
    std::vector<std::uint32_t> chain_off;
    std::vector<Vertex> chain;

    std::uint32_t copy_count(Vertex orig) const { return chain_off[orig + 1] - chain_off[orig]; }
};

/// Replaces every vertex of degree at least four by a path of copies
/// joined by zero-length bidirectional edges (each copy keeps finite
/// degree at most three), then fills every face other than `hole` with
/// infinite-length chords until all such faces are triangles. Finite
/// distances between original vertices are preserved exactly.
NormalizeResult normalize(const PlanarGraph& g, FaceId hole);

/// Triangulates the listed faces of an already-built graph in place
/// (returns the rebuilt graph plus the number of chords added). Used for
/// region complements whose leftover faces must become triangles.
PlanarGraph triangulate_faces(const PlanarGraph& g, const std::vector<FaceId>& skip,
                              std::uint32_t* chords_added = nullptr);

// ════════════════════════════════════════════════════════════════════════
//  Dual graph.
// ════════════════════════════════════════════════════════════════════════

/// The embedded dual: one vertex per face of g, one edge per edge of g
/// (same edge ids). Dual arc e runs from the left face of primal arc e
/// to its right face. Weights are copied from the primal arcs.
PlanarGraph build_dual(const PlanarGraph& g);

// ════════════════════════════════════════════════════════════════════════
//  Subgraph extraction (keeps the induced rotation order).
// ════════════════════════════════════════════════════════════════════════

struct Subgraph {
    PlanarGraph graph;
    std::vector<Vertex> to_sub;    // full vertex -> sub vertex or kNone
    std::vector<Vertex> to_full;   // sub vertex -> full vertex
    std::vector<EdgeId> edge_to_full;
    std::vector<EdgeId> edge_to_sub;  // full edge -> sub edge or kNone
};

/// Keeps exactly the edges with keep_edge[e] true (both darts). Vertices
/// incident to no kept edge are dropped. The rotation order of surviving
/// darts is inherited, so the result is a valid embedding of the
/// sub-map; faces are retraced.
Subgraph extract_subgraph(const PlanarGraph& g, const std::vector<char>& keep_edge);

}  // namespace voracle
