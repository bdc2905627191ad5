#include "voracle/tri_finder.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace voracle {

namespace {

// Larger (weight, site) wins an exact distance tie. Must agree with the
// cell assignment rule in voronoi.cpp.
bool tie_beats(const Weight& w_cand, std::uint32_t cand, const Weight& w_inc,
               std::uint32_t inc) {
    if (w_cand != w_inc) return w_inc < w_cand;
    return cand > inc;
}

}  // namespace

// ════════════════════════════════════════════════════════════════════════
//  Colors.
// ════════════════════════════════════════════════════════════════════════

ColorContext::ColorContext(const MsspHandle& h, std::uint32_t focus,
                           std::vector<std::uint32_t> ys, std::vector<Weight> w)
    : handle(&h), x(focus), rivals(std::move(ys)), omega(std::move(w)) {
    if (omega.size() != rivals.size() + 1)
        throw std::invalid_argument("weight count does not match the party size");
    if (x >= h.site_count()) throw std::invalid_argument("focus site is not on the hole");
    for (std::size_t i = 0; i < rivals.size(); ++i) {
        if (rivals[i] >= h.site_count())
            throw std::invalid_argument("rival site is not on the hole");
        if (rivals[i] == x) throw std::invalid_argument("focus site repeated among rivals");
        for (std::size_t j = i + 1; j < rivals.size(); ++j)
            if (rivals[i] == rivals[j]) throw std::invalid_argument("rival site repeated");
    }
}

std::uint32_t color_of(const ColorContext& ctx, Vertex v) {
    std::uint32_t best = kNone;
    Weight best_d = Weight::infinity(), best_w = Weight::infinity();
    for (std::size_t i = 0; i < ctx.party_size(); ++i) {
        std::uint32_t s = ctx.site_at(i);
        Weight d = ctx.omega[i] + ctx.handle->distance(s, v);
        bool take;
        if (best == kNone)
            take = true;
        else if (d != best_d)
            take = d < best_d;
        else
            take = tie_beats(ctx.omega[i], s, best_w, best);
        if (take) {
            best = s;
            best_d = d;
            best_w = ctx.omega[i];
        }
    }
    return best;
}

// ════════════════════════════════════════════════════════════════════════
//  Critical edges of a fundamental cycle.
// ════════════════════════════════════════════════════════════════════════

namespace {

bool edge_is_colored(const ColorContext& ctx, EdgeId e) {
    const PlanarGraph& g = ctx.handle->graph();
    Dart d = PlanarGraph::dart_of(e);
    return color_of(ctx, g.tail(d)) == ctx.x && color_of(ctx, g.head(d)) == ctx.x;
}

}  // namespace

CriticalPair find_critical(const ColorContext& ctx, EdgeId e) {
    const MsspHandle& h = *ctx.handle;
    const PlanarGraph& g = h.graph();
    Dart d = PlanarGraph::dart_of(e);
    Dart down;
    if (h.parent_dart(ctx.x, g.head(d)) == d)
        down = d;
    else if (h.parent_dart(ctx.x, g.tail(d)) == PlanarGraph::twin(d))
        down = PlanarGraph::twin(d);
    else
        throw std::invalid_argument("edge " + std::to_string(e) + " is not in the tree of site " +
                                    std::to_string(ctx.x));

    // side 0 right of the down dart, side 1 left; both walk rootward to
    // the meet, position i taken with counted level-ancestor probes
    FaceId start[2] = {g.face_of(PlanarGraph::twin(down)), g.face_of(down)};
    CriticalPair cp;
    cp.meet = h.cotree_lca(ctx.x, start[0], start[1]);
    std::uint32_t meet_depth = h.cotree_depth(ctx.x, cp.meet);

    for (int j = 0; j < 2; ++j) {
        std::uint32_t len = h.cotree_depth(ctx.x, start[j]) - meet_depth;
        cp.side_empty[j] = (len == 0);
        auto edge_at = [&](std::uint32_t i) {
            return h.cotree_parent_edge(ctx.x, h.cotree_ancestor(ctx.x, start[j], i));
        };
        // colored edges form a prefix; find the first edge that is not
        std::uint32_t lo = 0, hi = len;
        while (lo < hi) {
            std::uint32_t mid = lo + (hi - lo) / 2;
            if (edge_is_colored(ctx, edge_at(mid)))
                lo = mid + 1;
            else
                hi = mid;
        }
        EdgeId crit = lo < len ? edge_at(lo) : kNone;
        EdgeId last = kNone;
        if (crit == kNone && cp.meet == h.hole()) {
            // a clean side reaches the hole; its crossing is the final
            // path edge, or the tree edge itself when it borders the hole
            last = len > 0 ? edge_at(len - 1) : e;
        }
        (j == 0 ? cp.e1 : cp.e2) = crit;
        (j == 0 ? cp.last1 : cp.last2) = last;
    }
    return cp;
}

// ════════════════════════════════════════════════════════════════════════
//  Decision rule for two rivals.
// ════════════════════════════════════════════════════════════════════════

namespace {

// First party site at or before hole position k (cyclically downward)
// and first at or after position k+1 (cyclically upward). The two scans
// partition the hole, so the results always differ.
std::pair<std::uint32_t, std::uint32_t> nearest_pair(const MsspHandle& h,
                                                     const std::array<std::uint32_t, 3>& party,
                                                     std::uint32_t k) {
    std::array<std::uint32_t, 3> s = party;
    std::sort(s.begin(), s.end());
    std::uint32_t down = kNone;
    for (std::uint32_t id : s)
        if (id <= k) down = id;
    if (down == kNone) down = s[2];  // wrap: largest id
    std::uint32_t start = (k + 1) % h.site_count();
    std::uint32_t up = kNone;
    for (int i = 2; i >= 0; --i)
        if (s[i] >= start) up = s[i];
    if (up == kNone) up = s[0];  // wrap: smallest id
    return {down, up};
}

}  // namespace

bool trichromatic_decision(const ColorContext& ctx, const CriticalPair& cp) {
    if (ctx.rivals.size() != 2)
        throw std::invalid_argument("decision rule needs exactly two rivals");
    const MsspHandle& h = *ctx.handle;
    const PlanarGraph& g = h.graph();
    std::array<std::uint32_t, 3> party = {ctx.x, ctx.rivals[0], ctx.rivals[1]};

    std::vector<Vertex> samples;
    for (int j = 0; j < 2; ++j) {
        EdgeId crit = j == 0 ? cp.e1 : cp.e2;
        if (crit != kNone) {
            Dart d = PlanarGraph::dart_of(crit);
            samples.push_back(g.tail(d));
            samples.push_back(g.head(d));
        } else if (cp.meet == h.hole()) {
            EdgeId crossing = j == 0 ? cp.last1 : cp.last2;
            std::uint32_t k = h.hole_edge_index(crossing);
            if (k == kNone)
                throw std::logic_error("clean side crossing is not a hole edge");
            auto [down, up] = nearest_pair(h, party, k);
            samples.push_back(h.site(down));
            samples.push_back(h.site(up));
        } else {
            for (std::uint32_t i = 0; i < g.face_size(cp.meet); ++i)
                samples.push_back(g.tail(g.face_dart(cp.meet, i)));
        }
    }

    bool seen[3] = {false, false, false};
    for (Vertex v : samples) {
        std::uint32_t c = color_of(ctx, v);
        for (int i = 0; i < 3; ++i)
            if (c == party[i]) seen[i] = true;
    }
    return seen[0] && seen[1] && seen[2];
}

// ════════════════════════════════════════════════════════════════════════
//  Centroid elimination.
// ════════════════════════════════════════════════════════════════════════

EdgeId tree_elimination(const ColorContext& ctx,
                        const std::function<bool(const CriticalPair&)>& decide,
                        std::int32_t start) {
    const MsspHandle& h = *ctx.handle;
    const PlanarGraph& g = h.graph();
    auto sd = h.site_data(ctx.x);
    const CentroidTree& ct = sd->centroid;

    std::int32_t cur = start < 0 ? ct.root() : start;
    if (cur < 0) throw std::invalid_argument("empty centroid decomposition");

    // Invariant: the sought vertex lies in the current component or is
    // the rootward endpoint of `pending`, the last edge kept leafward.
    EdgeId pending = kNone;
    for (;;) {
        const CentroidTree::Node& nd = ct.node(cur);
        EdgeId split = nd.edge;
        Dart down = sd->tree.down_dart(split);
        Vertex u = g.tail(down);
        bool u_colored = color_of(ctx, u) == ctx.x;
        // cells are connected along the tree, so an endpoint outside the
        // focus cell empties the leafward side of candidates other than
        // u itself, which survives rootward; the decision rule is only
        // sound on an edge with both endpoints in the focus cell
        bool keep_below = u_colored && color_of(ctx, g.head(down)) == ctx.x &&
                          decide(find_critical(ctx, split));

        if (keep_below) {
            pending = split;
            if (nd.below < 0) return split;
            cur = nd.below;
            continue;
        }
        if (nd.above >= 0) {
            cur = nd.above;
            continue;
        }
        // rootward side has no edges left: candidates are u and the
        // rootward endpoint of pending
        if (pending == kNone || !u_colored) return pending == kNone ? split : pending;
        Dart pd = sd->tree.parent_dart(u);
        if (pd == kNone) return split;  // u is the root, nothing above survives
        EdgeId up_edge = PlanarGraph::edge_of(pd);
        if (up_edge == pending) return pending;
        return decide(find_critical(ctx, up_edge)) ? up_edge : pending;
    }
}

// ════════════════════════════════════════════════════════════════════════
//  Full search.
// ════════════════════════════════════════════════════════════════════════

std::optional<FaceId> find_trichromatic_face(const MsspHandle& handle, std::uint32_t a,
                                             std::uint32_t b, std::uint32_t c,
                                             const Weight& wa, const Weight& wb,
                                             const Weight& wc) {
    if (a == b || b == c || a == c) throw std::invalid_argument("sites must be distinct");
    ColorContext ctx(handle, b, {a, c}, {wb, wa, wc});

    // a site losing its own vertex has an empty cell, and three nonempty
    // cells are needed for a face to see all three colors
    std::array<std::uint32_t, 3> party = {a, b, c};
    for (std::uint32_t s : party)
        if (color_of(ctx, handle.site(s)) != s) return std::nullopt;

    EdgeId e = tree_elimination(
        ctx, [&](const CriticalPair& cp) { return trichromatic_decision(ctx, cp); });

    // the meeting face, if any, touches an endpoint of e
    const PlanarGraph& g = handle.graph();
    Dart d0 = PlanarGraph::dart_of(e);
    for (Vertex v : {g.tail(d0), g.head(d0)}) {
        for (std::uint32_t i = 0; i < g.degree(v); ++i) {
            FaceId f = g.face_of(g.rot_at(v, i));
            if (f == handle.hole()) continue;
            bool seen[3] = {false, false, false};
            for (std::uint32_t k = 0; k < g.face_size(f); ++k) {
                std::uint32_t col = color_of(ctx, g.tail(g.face_dart(f, k)));
                for (int t = 0; t < 3; ++t)
                    if (col == party[t]) seen[t] = true;
            }
            if (seen[0] && seen[1] && seen[2]) return f;
        }
    }
    return std::nullopt;
}

}  // namespace voracle
