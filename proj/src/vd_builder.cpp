#include "voracle/vd_builder.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

#include "voracle/tri_finder.hpp"

namespace voracle {

namespace {

// Counted access to the two primitives. Disabled sites are never probed.
struct Prober {
    const MsspHandle& h;
    const AdditiveWeights& w;
    BuildStats* st;

    Weight value(std::uint32_t s, Vertex v) const {
        if (st) ++st->distance_calls;
        return w.omega[s] + h.distance(s, v);
    }

    std::uint32_t nearest(const std::vector<std::uint32_t>& sites, Vertex v) const {
        std::uint32_t best = kNone;
        Weight bd = Weight::infinity();
        for (std::uint32_t s : sites) {
            if (w.omega[s].is_infinite()) continue;
            Weight c = value(s, v);
            if (best == kNone || c < bd || (c == bd && weighted_tie_beats(w, s, best))) {
                best = s;
                bd = c;
            }
        }
        return best;
    }

    std::optional<FaceId> meeting_face(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
        if (st) ++st->face_calls;
        return find_trichromatic_face(h, a, b, c, w.omega[a], w.omega[b], w.omega[c]);
    }
};

void check_weights(const MsspHandle& h, const AdditiveWeights& w) {
    if (w.omega.size() != h.site_count())
        throw std::invalid_argument("weight vector size does not match the number of hole vertices");
}

// A run is a contiguous cyclic stretch when its forward gaps fit one lap.
void check_arc(const MsspHandle& h, const AdditiveWeights& w, const ArcTask& arc) {
    check_weights(h, w);
    const std::uint32_t sc = h.site_count();
    if (arc.sites.size() < 3) throw std::invalid_argument("arc needs at least three sites");
    std::uint32_t lap = 0;
    for (std::size_t i = 0; i < arc.sites.size(); ++i) {
        std::uint32_t s = arc.sites[i];
        if (s >= sc) throw std::invalid_argument("arc site is not on the hole");
        if (w.omega[s].is_infinite()) throw std::invalid_argument("arc site is disabled");
        if (i > 0) {
            std::uint32_t gap = (s - arc.sites[i - 1] + sc) % sc;
            if (gap == 0) throw std::invalid_argument("arc site repeated");
            lap += gap;
        }
    }
    if (lap >= sc) throw std::invalid_argument("arc is not a contiguous cyclic run");
}

// Hole edge index carrying the owner switch between consecutive
// nonempty cells u and v. Positions strictly between them are owned by
// u then v, u's stretch first, so the switch bisects.
std::uint32_t transition(const Prober& p, std::uint32_t u, std::uint32_t v) {
    const std::uint32_t sc = p.h.site_count();
    std::uint32_t lo = 0;
    std::uint32_t hi = (v - u + sc) % sc;
    while (hi - lo > 1) {
        std::uint32_t mid = lo + (hi - lo) / 2;
        Vertex x = p.h.site((u + mid) % sc);
        Weight cu = p.value(u, x);
        Weight cv = p.value(v, x);
        bool v_wins = cv < cu || (cv == cu && weighted_tie_beats(p.w, v, u));
        (v_wins ? hi : lo) = mid;
    }
    return (u + lo) % sc;
}

// One candidate round: meeting-face query, then every corner's nearest
// site among `vs` must land on the triple. A passing face is genuine
// for the diagram over `vs`; a failing corner reports the intruding
// owner so the caller can steer.
std::optional<FaceId> try_candidate(const Prober& p, std::uint32_t a, std::uint32_t b,
                                    std::uint32_t c, const std::vector<std::uint32_t>& vs,
                                    std::uint32_t* intruder) {
    if (intruder) *intruder = kNone;
    std::optional<FaceId> f = p.meeting_face(a, b, c);
    if (!f) return std::nullopt;
    const PlanarGraph& g = p.h.graph();
    bool seen[3] = {false, false, false};
    for (std::uint32_t i = 0; i < 3; ++i) {
        Vertex x = g.tail(g.face_dart(*f, i));
        std::uint32_t o = p.nearest(vs, x);
        if (o == a) seen[0] = true;
        else if (o == b) seen[1] = true;
        else if (o == c) seen[2] = true;
        else {
            if (intruder) *intruder = o;
            return std::nullopt;
        }
    }
    if (!seen[0] || !seen[1] || !seen[2]) return std::nullopt;
    return f;
}

// Middle-out scan over the arc interior. A rejected candidate may name
// the intruding owner of a failed corner; when that owner is an untried
// interior site it becomes the next candidate, which usually jumps
// straight to the apex. Every interior site is tried at most once, so
// the scan terminates and stays linear in the arc per call.
std::uint32_t apex_search(const Prober& p, const std::vector<std::uint32_t>& arc,
                          const std::vector<std::uint32_t>& vs, FaceId* face_out) {
    const std::size_t n = arc.size();
    std::vector<char> tried(n, 0);
    auto position = [&](std::uint32_t site) -> std::size_t {
        for (std::size_t i = 1; i + 1 < n; ++i)
            if (arc[i] == site) return i;
        return 0;
    };
    auto attempt = [&](std::size_t i) -> std::optional<std::size_t> {
        tried[i] = 1;
        std::uint32_t intruder = kNone;
        std::optional<FaceId> f = try_candidate(p, arc.front(), arc[i], arc.back(), vs, &intruder);
        if (f) {
            if (face_out) *face_out = *f;
            return i;
        }
        if (intruder != kNone) {
            std::size_t j = position(intruder);
            if (j != 0 && !tried[j]) return j + n;  // steer hint, offset past the arc
        }
        return std::nullopt;
    };
    const std::size_t mid = n / 2;
    for (std::size_t off = 0; off < n; ++off) {
        std::size_t i = (off % 2 == 0) ? mid + (off + 1) / 2 : mid - (off + 1) / 2;
        if (i < 1 || i + 1 >= n || tried[i]) continue;
        std::optional<std::size_t> r = attempt(i);
        while (r && *r >= n) r = attempt(*r - n);
        if (r) return static_cast<std::uint32_t>(*r);
    }
    throw std::runtime_error("arc certification violated");
}

// Owner of every hole position. A cell is nonempty exactly when the
// site owns its own position, and the whole construction presumes the
// owner sequence visits each nonempty cell in one contiguous run.
std::vector<std::uint32_t> owner_row(const Prober& p) {
    std::vector<std::uint32_t> enabled;
    for (std::uint32_t s = 0; s < p.h.site_count(); ++s)
        if (!p.w.omega[s].is_infinite()) enabled.push_back(s);
    if (enabled.empty()) throw std::invalid_argument("every site is disabled");
    std::vector<std::uint32_t> row(p.h.site_count());
    for (std::uint32_t s = 0; s < p.h.site_count(); ++s) {
        row[s] = p.nearest(enabled, p.h.site(s));
        if (row[s] == kNone)
            throw std::invalid_argument("hole vertex unreachable from every enabled site");
    }
    return row;
}

std::vector<std::uint32_t> circle_of(const std::vector<std::uint32_t>& row) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < row.size(); ++s)
        if (row[s] == s) out.push_back(s);
    if (out.empty()) throw std::logic_error("no site owns its own hole vertex");
    return out;
}

}  // namespace

// ── public entry points ──────────────────────────────────────────────

std::vector<std::uint32_t> nonempty_cells(const MsspHandle& h, const AdditiveWeights& w,
                                          BuildStats* st) {
    check_weights(h, w);
    Prober p{h, w, st};
    return circle_of(owner_row(p));
}

std::optional<FaceId> certify_apex(const MsspHandle& h, const AdditiveWeights& w,
                                   const ArcTask& arc, std::uint32_t b, BuildStats* st) {
    check_arc(h, w, arc);
    bool interior = false;
    for (std::size_t i = 1; i + 1 < arc.sites.size(); ++i) interior |= arc.sites[i] == b;
    if (!interior) throw std::invalid_argument("apex candidate is not interior to the arc");
    Prober p{h, w, st};
    return try_candidate(p, arc.sites.front(), b, arc.sites.back(), arc.sites, nullptr);
}

std::uint32_t find_apex(const MsspHandle& h, const AdditiveWeights& w, const ArcTask& arc,
                        BuildStats* st, FaceId* face_out) {
    check_arc(h, w, arc);
    Prober p{h, w, st};
    return arc.sites[apex_search(p, arc.sites, arc.sites, face_out)];
}

VoronoiDual assemble(const MsspHandle& h, const AdditiveWeights& w,
                     const std::vector<std::uint32_t>& cells,
                     const std::vector<ApexTriple>& triples, BuildStats* st) {
    check_weights(h, w);
    const PlanarGraph& g = h.graph();
    const std::uint32_t sc = h.site_count();
    const std::size_t m = cells.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (cells[i] >= sc || w.omega[cells[i]].is_infinite())
            throw std::invalid_argument("cells must list enabled sites");
        if (i > 0 && cells[i] <= cells[i - 1])
            throw std::invalid_argument("cells must be ascending");
    }
    if (m < 2) {
        if (!triples.empty()) throw std::invalid_argument("apex triples do not match the cell count");
        return {};
    }
    std::size_t expected = m == 2 ? 0 : m - 2;
    if (triples.size() != expected)
        throw std::invalid_argument("apex triples do not triangulate the site polygon");

    Prober p{h, w, st};
    VoronoiDual vd;

    // Pair bookkeeping: consecutive cells attach leaves and appear in
    // exactly one triple, every other used pair in exactly two.
    using Pair = std::pair<std::uint32_t, std::uint32_t>;
    auto norm = [](std::uint32_t a, std::uint32_t b) {
        return a < b ? Pair{a, b} : Pair{b, a};
    };
    std::vector<char> in_cells(sc, 0);
    for (std::uint32_t s : cells) in_cells[s] = 1;
    std::map<Pair, std::vector<std::size_t>> owner_triples;
    for (std::size_t t = 0; t < triples.size(); ++t) {
        std::uint32_t s3[3] = {triples[t].a, triples[t].apex, triples[t].c};
        for (int i = 0; i < 3; ++i) {
            if (s3[i] >= sc || !in_cells[s3[i]])
                throw std::invalid_argument("apex triple names a site without a cell");
            for (int j = i + 1; j < 3; ++j) {
                if (s3[i] == s3[j]) throw std::invalid_argument("apex triple repeats a site");
                owner_triples[norm(s3[i], s3[j])].push_back(t);
            }
        }
    }
    std::map<Pair, std::size_t> boundary_gap;
    for (std::size_t k = 0; k < m && m > 2; ++k)
        boundary_gap[norm(cells[k], cells[(k + 1) % m])] = k;
    for (const auto& [pr, owners] : owner_triples) {
        std::size_t want = boundary_gap.count(pr) ? 1 : 2;
        if (owners.size() != want)
            throw std::invalid_argument("apex triples do not triangulate the site polygon");
    }
    for (const auto& [pr, gap] : boundary_gap)
        if (!owner_triples.count(pr))
            throw std::invalid_argument("apex triples do not triangulate the site polygon");

    // Internal nodes in face id order; corner owners probed against the
    // triple pin each node's site alignment.
    std::vector<std::size_t> order(triples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return triples[x].face < triples[y].face; });
    std::vector<std::int32_t> node_of_triple(triples.size(), -1);
    for (std::size_t t : order) {
        FaceId f = triples[t].face;
        if (f >= g.face_count() || f == h.hole() || g.face_size(f) != 3)
            throw std::invalid_argument("apex face is not a triangle");
        VoronoiDual::Node n;
        n.face = f;
        n.leaf = false;
        std::vector<std::uint32_t> triple = {triples[t].a, triples[t].apex, triples[t].c};
        bool seen[3] = {false, false, false};
        for (std::uint32_t i = 0; i < 3; ++i) {
            n.verts[i] = g.tail(g.face_dart(f, i));
            n.sites[i] = p.nearest(triple, n.verts[i]);
            for (int j = 0; j < 3; ++j) seen[j] |= n.sites[i] == triple[j];
        }
        if (!seen[0] || !seen[1] || !seen[2])
            throw std::logic_error("apex face is not trichromatic for its triple");
        node_of_triple[t] = static_cast<std::int32_t>(vd.nodes.size());
        vd.nodes.push_back(n);
    }

    // Leaves at the owner transition of each consecutive pair.
    std::vector<std::uint32_t> gap_edge(m);
    std::vector<std::int32_t> gap_leaf(m);
    for (std::size_t k = 0; k < m; ++k) {
        std::uint32_t u = cells[k];
        std::uint32_t v = cells[(k + 1) % m];
        gap_edge[k] = transition(p, u, v);
        VoronoiDual::Node n;
        n.face = h.hole();
        n.leaf = true;
        Dart d = h.hole_dart(gap_edge[k]);
        n.verts[0] = g.tail(d);
        n.verts[1] = g.head(d);
        n.sites[0] = u;
        n.sites[1] = v;
        gap_leaf[k] = static_cast<std::int32_t>(vd.nodes.size());
        vd.nodes.push_back(n);
    }

    auto side_edge = [&](std::int32_t node, std::uint32_t s, std::uint32_t t) {
        const VoronoiDual::Node& n = vd.nodes[node];
        for (std::uint32_t i = 0; i < 3; ++i) {
            Pair pr = norm(n.sites[i], n.sites[(i + 1) % 3]);
            if (pr == norm(s, t)) return PlanarGraph::edge_of(g.face_dart(n.face, i));
        }
        throw std::logic_error("node has no side for the pair");
    };
    auto attach = [&](std::int32_t node, std::int32_t edge_id, EdgeId end_fine) {
        VoronoiDual::Node& n = vd.nodes[node];
        if (n.leaf) {
            if (n.nbr[0] != -1) throw std::logic_error("hole copy gained a second curve");
            n.nbr[0] = edge_id;
            return;
        }
        for (int i = 0; i < 3; ++i) {
            if (PlanarGraph::edge_of(g.face_dart(n.face, i)) == end_fine) {
                if (n.nbr[i] != -1) throw std::logic_error("internal node slot already taken");
                n.nbr[i] = edge_id;
                return;
            }
        }
        throw std::logic_error("curve endpoint is not an edge of its node");
    };
    auto emit = [&](std::int32_t a, std::int32_t b, Pair pr, EdgeId fa, EdgeId fb) {
        VoronoiDual::Edge e;
        e.a = a;
        e.b = b;
        e.site_s = pr.first;
        e.site_t = pr.second;
        e.fine.push_back(fa);
        if (fb != fa) e.fine.push_back(fb);
        std::int32_t id = static_cast<std::int32_t>(vd.edges.size());
        vd.edges.push_back(std::move(e));
        attach(a, id, fa);
        attach(b, id, fb);
    };

    if (m == 2) {
        std::size_t first = gap_edge[0] < gap_edge[1] ? 0 : 1;
        emit(gap_leaf[first], gap_leaf[1 - first], norm(cells[0], cells[1]),
             h.hole_edge(gap_edge[first]), h.hole_edge(gap_edge[1 - first]));
    } else {
        for (std::size_t k = 0; k < m; ++k) {
            Pair pr = norm(cells[k], cells[(k + 1) % m]);
            std::int32_t b = node_of_triple[owner_triples[pr].front()];
            emit(gap_leaf[k], b, pr, h.hole_edge(gap_edge[k]), side_edge(b, pr.first, pr.second));
        }
        for (const auto& [pr, owners] : owner_triples) {
            if (owners.size() != 2) continue;
            std::int32_t x = node_of_triple[owners[0]];
            std::int32_t y = node_of_triple[owners[1]];
            if (x > y) std::swap(x, y);
            emit(x, y, pr, side_edge(x, pr.first, pr.second), side_edge(y, pr.first, pr.second));
        }
    }

    // Structural audit mirrors the brute contraction: a connected tree.
    if (vd.edges.size() + 1 != vd.nodes.size()) throw std::logic_error("coarse diagram is not a tree");
    {
        std::vector<char> seen(vd.nodes.size(), 0);
        std::queue<std::int32_t> q;
        q.push(0);
        seen[0] = 1;
        std::size_t cnt = 1;
        while (!q.empty()) {
            std::int32_t u = q.front();
            q.pop();
            const VoronoiDual::Node& n = vd.nodes[u];
            int limit = n.leaf ? 1 : 3;
            for (int i = 0; i < limit; ++i) {
                if (n.nbr[i] == -1) throw std::logic_error("node is missing a curve");
                const VoronoiDual::Edge& ed = vd.edges[n.nbr[i]];
                std::int32_t v = ed.a == u ? ed.b : ed.a;
                if (!seen[v]) {
                    seen[v] = 1;
                    ++cnt;
                    q.push(v);
                }
            }
        }
        if (cnt != vd.nodes.size()) throw std::logic_error("coarse diagram is disconnected");
    }

    for (std::size_t k = 0; k < m; ++k) vd.leaves.push_back(gap_leaf[k]);
    std::sort(vd.leaves.begin(), vd.leaves.end(), [&](std::int32_t a, std::int32_t b) {
        return gap_edge[a - gap_leaf[0]] < gap_edge[b - gap_leaf[0]];
    });
    return vd;
}

VoronoiDual build_vdstar_fast(const MsspHandle& h, const AdditiveWeights& w, BuildStats* st) {
    check_weights(h, w);
    Prober p{h, w, st};
    std::vector<std::uint32_t> row = owner_row(p);
    std::vector<std::uint32_t> circle = circle_of(row);
    const std::size_t m = circle.size();
    if (m < 2) return {};

    // One owner run per nonempty cell, or the coarse dual is a forest.
    std::size_t runs = 0;
    for (std::size_t s = 0; s < row.size(); ++s) runs += row[s] != row[(s + 1) % row.size()];
    if (runs != m)
        throw std::logic_error("a cell wraps the hole, the coarse diagram is a forest");

    std::vector<ApexTriple> triples;
    if (m >= 3) {
        // Each arc splits at its apex; both halves keep their shared
        // endpoint, so arcs shrink strictly and tile the circle.
        std::vector<std::pair<std::size_t, std::size_t>> stack{{0, m - 1}};
        while (!stack.empty()) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            if (hi - lo == 1) continue;
            std::vector<std::uint32_t> arc(circle.begin() + lo, circle.begin() + hi + 1);
            FaceId face = kNone;
            std::size_t b = lo + apex_search(p, arc, circle, &face);
            triples.push_back({circle[lo], circle[b], circle[hi], face});
            stack.push_back({lo, b});
            stack.push_back({b, hi});
        }
    }
    return assemble(h, w, circle, triples, st);
}

}  // namespace voracle
