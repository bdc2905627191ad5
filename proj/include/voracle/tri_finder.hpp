#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "voracle/mssp.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Locating the meeting face of three Voronoi cells with O(log² n)
//  counted probes: a centroid descent over the focus site's shortest
//  path tree, steered by binary searches along dual root paths.
// ════════════════════════════════════════════════════════════════════════

// A focus site x competing against a set of rivals under additive
// weights. Colors are always relative to such a context.
struct ColorContext {
    const MsspHandle* handle = nullptr;
    std::uint32_t x = 0;                 // focus site id
    std::vector<std::uint32_t> rivals;   // competitor site ids, x excluded
    std::vector<Weight> omega;           // weights aligned with {x} + rivals

    ColorContext(const MsspHandle& h, std::uint32_t focus, std::vector<std::uint32_t> ys,
                 std::vector<Weight> w);

    std::uint32_t site_at(std::size_t i) const { return i == 0 ? x : rivals[i - 1]; }
    std::size_t party_size() const { return rivals.size() + 1; }
    const Weight& weight_of(std::size_t i) const { return omega[i]; }
};

/// The owning site of v among {x} + rivals: least weighted distance,
/// ties to the larger (weight, site) pair. One distance probe per party
/// member.
std::uint32_t color_of(const ColorContext& ctx, Vertex v);

// Outcome of the two rootward binary searches for a tree edge e: per
// side, the first dual edge whose primal is not entirely x-colored (or
// none), the meeting face of the two root paths, and the hole crossing
// of a fully colored side when the paths meet at the hole.
struct CriticalPair {
    EdgeId e1 = kNone, e2 = kNone;        // first non-x-colored edge per side
    FaceId meet = kNone;                  // common ancestor face of both sides
    EdgeId last1 = kNone, last2 = kNone;  // hole crossing when a side is clean
    bool side_empty[2] = {false, false};  // root path had no edges at all
};

/// Binary search along both rootward dual paths of e's fundamental
/// cycle, using counted ancestor probes. Requires e to be an edge of
/// the focus site's shortest path tree. The x-colored edges of each
/// path form a prefix, so O(log n) color probes per side suffice.
CriticalPair find_critical(const ColorContext& ctx, EdgeId e);

/// Decision rule for two rivals: collects sample vertices from the
/// critical edges, from the meeting face, or from the sites nearest to
/// a clean side's hole crossing (first site in each cyclic direction),
/// and reports whether all three colors appear. For a tree edge uv with
/// both endpoints x-colored (u rootward) and a meeting face present:
/// true whenever the x-colored corner of that face lies in the subtree
/// below uv, false whenever it lies outside the subtree and is not u
/// itself. When the corner is exactly u either answer may come back;
/// both elimination branches keep u alive, so the descent stays sound.
bool trichromatic_decision(const ColorContext& ctx, const CriticalPair& cp);

/// Centroid descent over the focus site's tree, starting at the given
/// node of its centroid decomposition (-1 for the whole tree). At each
/// split edge, keep the rootward side when either endpoint is outside
/// the focus cell or the predicate rejects; otherwise keep the leafward
/// side. The predicate sees the critical pair of the split edge and is
/// only consulted on edges with both endpoints x-colored. Returns an
/// edge with the surviving candidate vertex among its endpoints; a
/// carried rootward candidate is resolved with one extra predicate
/// call.
EdgeId tree_elimination(const ColorContext& ctx,
                        const std::function<bool(const CriticalPair&)>& decide,
                        std::int32_t start = -1);

/// The unique face whose three corners lie in three different cells of
/// the {a, b, c} diagram, or nothing when no such face exists. Focus is
/// the middle site. Expects a handle over a graph whose non-hole faces
/// are triangles.
std::optional<FaceId> find_trichromatic_face(const MsspHandle& handle, std::uint32_t a,
                                             std::uint32_t b, std::uint32_t c,
                                             const Weight& wa, const Weight& wb,
                                             const Weight& wc);

}  // namespace voracle
