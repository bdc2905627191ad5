#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "voracle/mssp.hpp"
#include "voracle/voronoi.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Fast construction of the dual Voronoi tree from query primitives.
//
//  Everything here touches the graph through exactly two operations:
//  weighted distance reports (omega(s) + d(s, v)) and three-site
//  meeting-face queries. Each issued primitive is counted, so callers
//  can audit the construction cost independently of the handle's own
//  probe accounting.
//
//  Tree shape carries the same caveat as contract_to_vdstar: weights
//  that wrap one cell around another make the coarse dual a forest,
//  which this builder does not model. Distance rows from a common
//  source and weight vectors with at most two enabled sites are always
//  safe; the builder checks the hole's owner sequence up front and
//  rejects wrapped cells instead of assembling a wrong tree.
// ════════════════════════════════════════════════════════════════════════

/// Primitives issued by the builder itself. Face queries cost many
/// handle probes internally; they count once here.
struct BuildStats {
    std::uint64_t distance_calls = 0;
    std::uint64_t face_calls = 0;
    std::uint64_t total() const { return distance_calls + face_calls; }
};

/// Contiguous run of sites along the hole, cyclic order, all with
/// nonempty cells. The endpoints' cells are adjacent across a single
/// diagram edge whose far side lies outside the run.
struct ArcTask {
    std::vector<std::uint32_t> sites;
};

/// Meeting vertex emitted for one arc: the cells of sites a < apex < c
/// (in arc order) share the corners of `face`.
struct ApexTriple {
    std::uint32_t a = kNone;
    std::uint32_t apex = kNone;
    std::uint32_t c = kNone;
    FaceId face = kNone;
};

/// Sites owning at least one vertex, ascending. A site owns its own
/// hole vertex exactly when its cell is nonempty, so one weighted
/// argmin per hole vertex settles the whole circle.
std::vector<std::uint32_t> nonempty_cells(const MsspHandle& handle, const AdditiveWeights& w,
                                          BuildStats* stats = nullptr);

/// Checks one apex candidate: runs the three-site meeting-face query
/// for (arc.front(), b, arc.back()) and accepts only if every corner's
/// nearest arc site lands on the triple. Returns the certified face.
std::optional<FaceId> certify_apex(const MsspHandle& handle, const AdditiveWeights& w,
                                   const ArcTask& arc, std::uint32_t b,
                                   BuildStats* stats = nullptr);

/// The unique interior site whose cell meets both endpoint cells at a
/// genuine diagram vertex. Candidates are tried middle-out, steered by
/// the true owner of any failing corner; every reject costs one face
/// query plus one corner scan. Throws "arc certification violated"
/// when no candidate passes.
std::uint32_t find_apex(const MsspHandle& handle, const AdditiveWeights& w, const ArcTask& arc,
                        BuildStats* stats = nullptr, FaceId* face_out = nullptr);

/// Rebuilds the coarse tree from the meeting vertices alone. `cells`
/// is the nonempty-site circle (ascending); the triples must
/// triangulate its polygon: every pair of consecutive sites appears in
/// exactly one triple (those sides attach leaves), every other used
/// pair in exactly two. Fine curves are not traced; each edge keeps
/// only its two end crossings, recovered from the incident faces'
/// corner colors and, at the hole, by bisecting the owner transition
/// between consecutive sites.
VoronoiDual assemble(const MsspHandle& handle, const AdditiveWeights& w,
                     const std::vector<std::uint32_t>& cells,
                     const std::vector<ApexTriple>& triples, BuildStats* stats = nullptr);

/// Full pipeline: filter empty cells, split the site circle by
/// recursive apex search, assemble. Output matches the brute-force
/// contraction as a labeled tree (node ids may differ; edge fine
/// paths keep ends only). Two nonempty cells need no face query at
/// all; a single nonempty cell yields an empty diagram.
VoronoiDual build_vdstar_fast(const MsspHandle& handle, const AdditiveWeights& w,
                              BuildStats* stats = nullptr);

}  // namespace voracle
