#include "voracle/rdivision.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace voracle {

namespace {

// Cuts L lines into max(1, L/b) runs whose sizes differ by at most one;
// every run keeps at least b lines.
std::vector<std::uint32_t> run_sizes(std::uint32_t L, std::uint32_t b) {
    std::uint32_t runs = std::max<std::uint32_t>(1, L / b);
    std::uint32_t base = L / runs, rem = L % runs;
    std::vector<std::uint32_t> out(runs, base);
    for (std::uint32_t i = 0; i < rem; ++i) ++out[i];
    return out;
}

RDivision lone_division(std::uint32_t n, std::uint32_t r) {
    RDivision out;
    out.r = r;
    Region reg;
    reg.vertices.resize(n);
    for (Vertex v = 0; v < n; ++v) reg.vertices[v] = v;
    reg.interior = reg.vertices;
    out.regions.push_back(std::move(reg));
    out.region_of.assign(n, 0);
    return out;
}

// The unique edge with a finite direction joining u and w.
EdgeId step_edge(const PlanarGraph& g, Vertex u, Vertex w) {
    EdgeId found = kNone;
    for (std::uint32_t i = 0, deg = g.degree(u); i < deg; ++i) {
        Dart d = g.rot_at(u, i);
        if (g.head(d) != w || !g.edge_usable(PlanarGraph::edge_of(d))) continue;
        EdgeId e = PlanarGraph::edge_of(d);
        if (found != kNone && found != e)
            throw std::invalid_argument("ring step between two vertices is ambiguous");
        found = e;
    }
    if (found == kNone)
        throw std::invalid_argument("ring step is missing between " + std::to_string(u) +
                                    " and " + std::to_string(w));
    return found;
}

// Faces reachable from seed without crossing a ring edge, plus every
// vertex those faces touch.
struct Flood {
    std::vector<char> face_in;
    std::vector<char> vert_in;
    std::vector<Vertex> verts;
};

Flood flood_from(const PlanarGraph& g, const std::vector<char>& ring_edge, FaceId seed) {
    Flood fl;
    fl.face_in.assign(g.face_count(), 0);
    fl.vert_in.assign(g.vertex_count(), 0);
    std::deque<FaceId> queue{seed};
    fl.face_in[seed] = 1;
    while (!queue.empty()) {
        FaceId f = queue.front();
        queue.pop_front();
        for (const Dart* it = g.face_begin(f); it != g.face_end(f); ++it) {
            Vertex v = g.tail(*it);
            if (!fl.vert_in[v]) {
                fl.vert_in[v] = 1;
                fl.verts.push_back(v);
            }
            if (ring_edge[PlanarGraph::edge_of(*it)]) continue;
            FaceId nb = g.face_of(PlanarGraph::twin(*it));
            if (!fl.face_in[nb]) {
                fl.face_in[nb] = 1;
                queue.push_back(nb);
            }
        }
    }
    std::sort(fl.verts.begin(), fl.verts.end());
    return fl;
}

Dart forward_dart(const PlanarGraph& g, EdgeId e, Vertex tail) {
    Dart d = PlanarGraph::dart_of(e);
    return g.tail(d) == tail ? d : PlanarGraph::twin(d);
}

}  // namespace

// ── complement ───────────────────────────────────────────────────────

Complement build_complement(const PlanarGraph& g, const Region& region) {
    const std::uint32_t k = static_cast<std::uint32_t>(region.boundary.size());
    if (k < 3) throw std::invalid_argument("a region boundary needs at least three vertices");
    {
        std::unordered_set<Vertex> seen(region.boundary.begin(), region.boundary.end());
        if (seen.size() != k) throw std::invalid_argument("region boundary repeats a vertex");
    }

    std::vector<char> ring_edge(g.edge_count(), 0);
    std::vector<EdgeId> cyc(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        cyc[i] = step_edge(g, region.boundary[i], region.boundary[(i + 1) % k]);
        ring_edge[cyc[i]] = 1;
    }

    // expected enclosed set: the region itself
    std::vector<Vertex> expect = region.vertices;
    std::sort(expect.begin(), expect.end());

    Dart d0 = forward_dart(g, cyc[0], region.boundary[0]);
    Flood inside = flood_from(g, ring_edge, g.face_of(d0));
    Dart chosen = d0;
    if (inside.verts != expect) {
        chosen = PlanarGraph::twin(d0);
        inside = flood_from(g, ring_edge, g.face_of(chosen));
        if (inside.verts != expect)
            throw std::invalid_argument("region ring does not enclose its vertex set");
    }

    std::vector<char> keep(g.edge_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        keep[e] = !(inside.face_in[g.left_face(e)] && inside.face_in[g.right_face(e)]);
    for (EdgeId e : cyc)
        if (!keep[e]) throw std::logic_error("ring edge fell inside its own enclosure");

    Complement out;
    out.sub = extract_subgraph(g, keep);
    for (Vertex v : region.interior)
        if (out.sub.to_sub[v] != kNone)
            throw std::logic_error("enclosed vertex survives the cut");
    for (Vertex v : region.boundary)
        if (out.sub.to_sub[v] == kNone)
            throw std::logic_error("ring vertex dropped by the cut");

    const PlanarGraph& s = out.sub.graph;
    FaceId freed = s.face_of(2 * out.sub.edge_to_sub[cyc[0]] + (chosen & 1));
    if (s.face_size(freed) != k)
        throw std::invalid_argument("cutting the region frees a face of the wrong size");
    {
        std::vector<Vertex> walk;
        for (const Dart* it = s.face_begin(freed); it != s.face_end(freed); ++it)
            walk.push_back(out.sub.to_full[s.tail(*it)]);
        std::sort(walk.begin(), walk.end());
        std::vector<Vertex> ring = region.boundary;
        std::sort(ring.begin(), ring.end());
        if (walk != ring)
            throw std::invalid_argument("freed face does not trace the region ring");
    }

    Dart anchor = s.face_dart(freed, 0);
    out.tri = triangulate_faces(s, {freed});
    out.hole = out.tri.face_of(anchor);
    if (out.tri.face_size(out.hole) != k)
        throw std::logic_error("triangulation disturbed the freed face");
    out.sites.reserve(k);
    for (const Dart* it = out.tri.face_begin(out.hole); it != out.tri.face_end(out.hole); ++it)
        out.sites.push_back(out.sub.to_full[out.tri.tail(*it)]);
    return out;
}

// ── division ─────────────────────────────────────────────────────────

RDivision build_r_division(const PlanarGraph& g, std::uint32_t r) {
    const std::uint32_t n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("cannot divide an empty graph");
    if (r == 0) throw std::invalid_argument("region size target must be positive");
    if (r >= n) return lone_division(n, r);
    if (!g.has_coords())
        throw std::invalid_argument(
            "block division needs vertex coordinates; this instance carries none");

    // coordinate lines per axis, then line indices per vertex
    std::map<double, std::uint32_t> xline, yline;
    for (Vertex v = 0; v < n; ++v) {
        xline.emplace(g.coord(v)[0], 0);
        yline.emplace(g.coord(v)[1], 0);
    }
    std::uint32_t Lx = 0, Ly = 0;
    for (auto& kv : xline) kv.second = Lx++;
    for (auto& kv : yline) kv.second = Ly++;

    const std::uint32_t b = std::max<std::uint32_t>(
        2, static_cast<std::uint32_t>(std::sqrt(static_cast<double>(r))));
    std::vector<std::uint32_t> xruns = run_sizes(Lx, b), yruns = run_sizes(Ly, b);
    if (xruns.size() * yruns.size() <= 1) return lone_division(n, r);

    std::vector<std::uint32_t> xi(n), yi(n);
    std::unordered_map<std::uint64_t, std::vector<Vertex>> at;
    auto key = [Ly](std::uint32_t ix, std::uint32_t iy) {
        return static_cast<std::uint64_t>(ix) * Ly + iy;
    };
    for (Vertex v = 0; v < n; ++v) {
        xi[v] = xline.at(g.coord(v)[0]);
        yi[v] = yline.at(g.coord(v)[1]);
        at[key(xi[v], yi[v])].push_back(v);
    }

    std::vector<std::uint32_t> xstart{0}, ystart{0};
    for (std::uint32_t s : xruns) xstart.push_back(xstart.back() + s);
    for (std::uint32_t s : yruns) ystart.push_back(ystart.back() + s);

    RDivision out;
    out.r = r;
    out.region_of.assign(n, kNone);

    auto copies = [&](std::uint32_t ix, std::uint32_t iy) -> const std::vector<Vertex>& {
        auto it = at.find(key(ix, iy));
        if (it == at.end())
            throw std::invalid_argument("block ring has a gap at a lattice position");
        return it->second;
    };

    // zero-length gadget hops between two vertices sharing one position
    auto connector = [&](Vertex from, Vertex to, std::vector<Vertex>& verts,
                         std::vector<EdgeId>& edges) {
        verts.push_back(from);
        if (from == to) return;
        std::unordered_map<Vertex, Dart> parent;
        parent[from] = kNone;
        std::deque<Vertex> queue{from};
        while (!queue.empty() && !parent.count(to)) {
            Vertex u = queue.front();
            queue.pop_front();
            for (std::uint32_t i = 0, deg = g.degree(u); i < deg; ++i) {
                Dart d = g.rot_at(u, i);
                Vertex w = g.head(d);
                if (!g.edge_usable(PlanarGraph::edge_of(d))) continue;
                if (xi[w] != xi[from] || yi[w] != yi[from] || parent.count(w)) continue;
                parent[w] = d;
                queue.push_back(w);
            }
        }
        if (!parent.count(to))
            throw std::invalid_argument("ring copies are not connected at a lattice position");
        std::vector<std::pair<Vertex, EdgeId>> back;
        for (Vertex v = to; v != from; v = g.tail(parent[v]))
            back.push_back({v, PlanarGraph::edge_of(parent[v])});
        for (auto it = back.rbegin(); it != back.rend(); ++it) {
            edges.push_back(it->second);
            verts.push_back(it->first);
        }
    };

    for (std::uint32_t c = 0; c < yruns.size(); ++c) {
        for (std::uint32_t a = 0; a < xruns.size(); ++a) {
            const std::uint32_t XLO = xstart[a] - (a > 0 ? 1 : 0);
            const std::uint32_t XHI = xstart[a + 1] - 1 + (a + 1 < xruns.size() ? 1 : 0);
            const std::uint32_t YLO = ystart[c] - (c > 0 ? 1 : 0);
            const std::uint32_t YHI = ystart[c + 1] - 1 + (c + 1 < yruns.size() ? 1 : 0);

            // rim lattice positions, one full turn
            std::vector<std::pair<std::uint32_t, std::uint32_t>> rim;
            for (std::uint32_t x = XLO; x <= XHI; ++x) rim.push_back({x, YLO});
            for (std::uint32_t y = YLO + 1; y <= YHI; ++y) rim.push_back({XHI, y});
            for (std::uint32_t x = XHI - 1; x + 1 > XLO; --x) rim.push_back({x, YHI});
            for (std::uint32_t y = YHI - 1; y > YLO; --y) rim.push_back({XLO, y});
            const std::uint32_t m = static_cast<std::uint32_t>(rim.size());

            // one crossing edge per consecutive rim position pair
            std::vector<EdgeId> cross(m);
            std::vector<Vertex> cross_from(m), cross_to(m);
            for (std::uint32_t i = 0; i < m; ++i) {
                auto [px, py] = rim[i];
                auto [qx, qy] = rim[(i + 1) % m];
                EdgeId found = kNone;
                for (Vertex u : copies(px, py)) {
                    for (std::uint32_t j = 0, deg = g.degree(u); j < deg; ++j) {
                        Dart d = g.rot_at(u, j);
                        Vertex w = g.head(d);
                        if (xi[w] != qx || yi[w] != qy) continue;
                        if (!g.edge_usable(PlanarGraph::edge_of(d))) continue;
                        EdgeId e = PlanarGraph::edge_of(d);
                        if (found != kNone && found != e)
                            throw std::invalid_argument(
                                "ring step between two lattice positions is ambiguous");
                        found = e;
                        cross_from[i] = u;
                        cross_to[i] = w;
                    }
                }
                if (found == kNone)
                    throw std::invalid_argument("block ring has no edge between two "
                                                "neighboring lattice positions");
                cross[i] = found;
            }

            // thread the ring: gadget hops within a position, then cross
            std::vector<Vertex> cyc_verts;
            std::vector<EdgeId> cyc_edges;
            for (std::uint32_t i = 0; i < m; ++i) {
                Vertex arrive = cross_to[(i + m - 1) % m];
                connector(arrive, cross_from[i], cyc_verts, cyc_edges);
                cyc_edges.push_back(cross[i]);
            }
            {
                std::unordered_set<Vertex> seen(cyc_verts.begin(), cyc_verts.end());
                if (seen.size() != cyc_verts.size())
                    throw std::invalid_argument("region ring walk repeats a vertex");
            }

            // enclosed side: the flood whose vertices stay inside the window
            std::vector<char> ring_edge(g.edge_count(), 0);
            for (EdgeId e : cyc_edges) ring_edge[e] = 1;
            auto in_window = [&](Vertex v) {
                return xi[v] >= XLO && xi[v] <= XHI && yi[v] >= YLO && yi[v] <= YHI;
            };
            auto contained = [&](const Flood& fl) {
                return std::all_of(fl.verts.begin(), fl.verts.end(), in_window);
            };
            Dart d0 = forward_dart(g, cyc_edges[0], cyc_verts[0]);
            Flood inside = flood_from(g, ring_edge, g.face_of(d0));
            if (!contained(inside)) {
                inside = flood_from(g, ring_edge, g.face_of(PlanarGraph::twin(d0)));
                if (!contained(inside))
                    throw std::invalid_argument("region ring does not bound its block");
            }

            Region reg;
            reg.boundary = cyc_verts;
            std::vector<char> on_ring(n, 0);
            for (Vertex v : cyc_verts) on_ring[v] = 1;
            for (Vertex v : inside.verts)
                if (!on_ring[v]) reg.interior.push_back(v);
            reg.vertices = reg.interior;
            reg.vertices.insert(reg.vertices.end(), cyc_verts.begin(), cyc_verts.end());
            std::sort(reg.vertices.begin(), reg.vertices.end());
            out.regions.push_back(std::move(reg));
        }
    }

    // routing table: prefer the region that strictly encloses the vertex
    for (std::uint32_t i = 0; i < out.regions.size(); ++i)
        for (Vertex v : out.regions[i].interior)
            if (out.region_of[v] == kNone) out.region_of[v] = i;
    for (std::uint32_t i = 0; i < out.regions.size(); ++i)
        for (Vertex v : out.regions[i].boundary)
            if (out.region_of[v] == kNone) out.region_of[v] = i;
    for (Vertex v = 0; v < n; ++v)
        if (out.region_of[v] == kNone)
            throw std::invalid_argument("division leaves a vertex outside every ring");

    // canonical boundary order comes from the freed face walk, and the
    // walk must leave a region only through its ring
    for (Region& reg : out.regions) {
        Complement comp = build_complement(g, reg);
        reg.boundary = std::move(comp.sites);
        std::vector<char> in_r(n, 0), on_ring(n, 0);
        for (Vertex v : reg.vertices) in_r[v] = 1;
        for (Vertex v : reg.boundary) on_ring[v] = 1;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            Vertex u = g.tail(2 * e), w = g.head(2 * e);
            if (in_r[u] != in_r[w] && !(in_r[u] ? on_ring[u] : on_ring[w]))
                throw std::logic_error("an edge leaves a region away from its ring");
        }
    }
    return out;
}

}  // namespace voracle
