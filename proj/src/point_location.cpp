#include "voracle/point_location.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace voracle {

namespace {

// ── balanced edge splits ─────────────────────────────────────────────

struct SplitBuild {
    const VoronoiDual& d;
    std::vector<PlIndex::Node>& nodes;

    // Component of `piece` reachable from `from` after dropping `cut`.
    std::vector<std::int32_t> component(const std::vector<std::int32_t>& piece,
                                        std::int32_t cut, std::int32_t from) const {
        std::vector<char> in_piece(d.edges.size(), 0);
        for (std::int32_t e : piece) in_piece[e] = 1;
        in_piece[cut] = 0;
        std::vector<std::int32_t> out, stack{from};
        std::vector<char> seen(d.nodes.size(), 0);
        seen[from] = 1;
        while (!stack.empty()) {
            std::int32_t n = stack.back();
            stack.pop_back();
            for (std::int32_t e : d.nodes[n].nbr) {
                if (e < 0 || !in_piece[e]) continue;
                in_piece[e] = 0;
                out.push_back(e);
                const VoronoiDual::Edge& ed = d.edges[e];
                std::int32_t other = ed.a == n ? ed.b : ed.a;
                if (!seen[other]) {
                    seen[other] = 1;
                    stack.push_back(other);
                }
            }
        }
        return out;
    }

    // Returns (node id, height) for the piece's split tree.
    std::pair<std::int32_t, std::uint32_t> build(const std::vector<std::int32_t>& piece) {
        if (piece.size() == 1) {
            nodes.push_back({piece[0], {-1, -1}});
            return {static_cast<std::int32_t>(nodes.size() - 1), 0};
        }
        std::int32_t best = -1;
        std::size_t best_larger = piece.size();
        for (std::int32_t e : piece) {
            std::size_t na = component(piece, e, d.edges[e].a).size();
            std::size_t larger = std::max(na, piece.size() - 1 - na);
            if (larger < best_larger || (larger == best_larger && e < best)) {
                best_larger = larger;
                best = e;
            }
        }
        if (best_larger * 3 > piece.size() * 2)
            throw std::logic_error("diagram admits no balanced split edge");
        std::vector<std::int32_t> side_a = component(piece, best, d.edges[best].a);
        std::vector<std::int32_t> side_b = component(piece, best, d.edges[best].b);
        PlIndex::Node n{best, {-1, -1}};
        std::uint32_t height = 0;
        if (!side_a.empty()) {
            auto [id, hgt] = build(side_a);
            n.kid[0] = id;
            height = std::max(height, hgt + 1);
        }
        if (!side_b.empty()) {
            auto [id, hgt] = build(side_b);
            n.kid[1] = id;
            height = std::max(height, hgt + 1);
        }
        nodes.push_back(n);
        return {static_cast<std::int32_t>(nodes.size() - 1), height};
    }
};

Weight site_cost(const MsspHandle& h, const AdditiveWeights& w, std::uint32_t s, Vertex v) {
    return w.omega[s] + h.distance(s, v);
}

bool closer(const AdditiveWeights& w, const Weight& cand_cost, std::uint32_t cand,
            const Weight& inc_cost, std::uint32_t inc) {
    if (cand_cost < inc_cost) return true;
    return cand_cost == inc_cost && weighted_tie_beats(w, cand, inc);
}

// Slot of the incident edge `e` at internal node `n`.
std::uint32_t slot_of(const VoronoiDual::Node& n, std::int32_t e) {
    for (std::uint32_t i = 0; i < 3; ++i)
        if (n.nbr[i] == e) return i;
    throw std::logic_error("split edge is not incident to its node");
}

// v hangs strictly below corner j of internal node `n` in the corner
// site's tree: true when its branch leaves the corner clockwise before
// the face wedge, on the side of the previous corner.
bool early_below_corner(const MsspHandle& h, const VoronoiDual::Node& n, std::uint32_t j,
                        Vertex v) {
    const PlanarGraph& g = h.graph();
    Vertex y = n.verts[j];
    auto sd = h.site_data(n.sites[j]);
    const RootedTree& t = sd->tree;
    Dart toward_prev = PlanarGraph::twin(g.face_dart(n.face, (j + 2) % 3));
    Dart anchor = y == t.root() ? t.root_start() : PlanarGraph::twin(t.parent_dart(y));
    std::uint32_t deg = g.degree(y);
    std::uint32_t apos = g.rot_index(anchor);
    auto rel = [&](Dart d) { return (g.rot_index(d) + deg - apos) % deg; };
    for (std::uint32_t k = 0; k < deg; ++k) {
        Dart d = g.rot_at(y, k);
        if (t.dart_in_tree(d) && t.is_ancestor(g.head(d), v))
            return rel(d) <= rel(toward_prev);
    }
    throw std::logic_error("descendant probe lost its branch");
}

// Preferred slot at internal node `n`: the region of v among the three
// cut by the corner paths. On a path, v belongs to that corner's site
// and the corner's own slot is committed.
std::uint32_t decide(const MsspHandle& h, const AdditiveWeights& w, const VoronoiDual::Node& n,
                     Vertex v) {
    std::uint32_t jstar = 0;
    Weight best = site_cost(h, w, n.sites[0], v);
    for (std::uint32_t j = 1; j < 3; ++j) {
        Weight c = site_cost(h, w, n.sites[j], v);
        if (closer(w, c, n.sites[j], best, n.sites[jstar])) {
            best = c;
            jstar = j;
        }
    }
    std::uint32_t s = n.sites[jstar];
    Vertex y = n.verts[jstar];
    std::uint32_t prev = (jstar + 2) % 3;
    if (v == y || h.is_ancestor(s, v, y)) return jstar;
    if (h.is_ancestor(s, y, v)) return early_below_corner(h, n, jstar, v) ? prev : jstar;
    return h.preorder(s, v) < h.preorder(s, y) ? prev : jstar;
}

}  // namespace

// ── public entry points ──────────────────────────────────────────────

PlIndex build_pl_index(const MsspHandle& h, const AdditiveWeights& w, VoronoiDual vd) {
    if (w.omega.size() != h.site_count())
        throw std::invalid_argument("weight vector size does not match the number of hole vertices");
    PlIndex idx;
    idx.vd_ = std::move(vd);
    const VoronoiDual& d = idx.vd_;
    idx.cost_.assign(d.nodes.size(),
                     {Weight::infinity(), Weight::infinity(), Weight::infinity()});
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const VoronoiDual::Node& n = d.nodes[i];
        if (n.leaf) continue;
        for (std::uint32_t j = 0; j < 3; ++j)
            idx.cost_[i][j] = site_cost(h, w, n.sites[j], n.verts[j]);
    }
    if (d.edges.empty()) return idx;

    std::vector<std::int32_t> all(d.edges.size());
    for (std::size_t e = 0; e < all.size(); ++e) all[e] = static_cast<std::int32_t>(e);
    SplitBuild sb{d, idx.nodes_};
    auto [root, height] = sb.build(all);
    idx.root_ = root;
    idx.height_ = height;
    return idx;
}

PointLocation point_locate(const PlIndex& idx, const MsspHandle& h, const AdditiveWeights& w,
                           Vertex v) {
    if (idx.empty())
        throw std::invalid_argument("the diagram has no cells to search");
    if (v >= h.graph().vertex_count()) throw std::invalid_argument("vertex is not in the graph");
    if (w.omega.size() != h.site_count())
        throw std::invalid_argument("weight vector size does not match the number of hole vertices");

    const VoronoiDual& d = idx.diagram();
    // Beats-minimum over a node's sites; the owner is always among them
    // when the walk stops here.
    auto settle = [&](std::int32_t nid) -> PointLocation {
        const VoronoiDual::Node& n = d.nodes[nid];
        std::uint32_t count = n.leaf ? 2 : 3;
        PointLocation out{n.sites[0], site_cost(h, w, n.sites[0], v)};
        for (std::uint32_t j = 1; j < count; ++j) {
            Weight c = site_cost(h, w, n.sites[j], v);
            if (closer(w, c, n.sites[j], out.dist, out.site)) out = {n.sites[j], c};
        }
        return out;
    };

    std::int32_t cur = idx.root();
    for (;;) {
        const PlIndex::Node& bn = idx.node(cur);
        const VoronoiDual::Edge& e = d.edges[bn.edge];
        std::int32_t fi = !d.nodes[e.a].leaf ? e.a : e.b;
        if (d.nodes[fi].leaf) return settle(fi);  // one curve between two hole copies
        std::uint32_t slot = decide(h, w, d.nodes[fi], v);
        bool across = slot == slot_of(d.nodes[fi], bn.edge);
        std::int32_t side = (fi == e.a) == across ? 1 : 0;
        std::int32_t kid = bn.kid[side];
        if (kid < 0) return settle(side == 0 ? e.a : e.b);
        cur = kid;
    }
}

}  // namespace voracle
