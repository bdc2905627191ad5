#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "voracle/generators.hpp"
#include "voracle/mssp.hpp"
#include "voracle/voronoi.hpp"

using namespace voracle;

namespace {

NormalizeResult norm_grid(std::uint32_t w, std::uint32_t h, std::uint64_t seed,
                          std::uint64_t pseed) {
    PlanarGraph g = make_grid({w, h, seed, 1000});
    NormalizeResult nr = normalize(g, g.infinite_face());
    nr.graph.perturb(pseed);
    return nr;
}

NormalizeResult norm_tri(std::uint32_t boundary, std::uint32_t target, std::uint64_t seed,
                         std::uint64_t pseed) {
    PlanarGraph g = make_random_triangulation({boundary, target, seed, 1000});
    NormalizeResult nr = normalize(g, g.infinite_face());
    nr.graph.perturb(pseed);
    return nr;
}

std::vector<Vertex> hole_sites(const PlanarGraph& g, FaceId hole) {
    std::vector<Vertex> sites;
    for (const Dart* it = g.face_begin(hole); it != g.face_end(hole); ++it)
        sites.push_back(g.tail(*it));
    return sites;
}

// Single sweep from all enabled sites at once. The heap favors small
// weights, then the larger (omega, site) pair, so the first settle of a
// vertex applies the same tie rule as the per-vertex argmin.
CellAssignment sweep_oracle(const PlanarGraph& g, FaceId hole, const AdditiveWeights& w) {
    std::vector<Vertex> sites = hole_sites(g, hole);
    struct Entry {
        Weight d;
        std::uint32_t s;
        Vertex v;
    };
    auto worse = [&](const Entry& a, const Entry& b) {
        if (a.d != b.d) return b.d < a.d;
        if (w.omega[a.s] != w.omega[b.s]) return w.omega[a.s] < w.omega[b.s];
        return a.s < b.s;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> pq(worse);
    for (std::uint32_t s = 0; s < sites.size(); ++s)
        if (!w.omega[s].is_infinite()) pq.push({w.omega[s], s, sites[s]});

    CellAssignment out;
    out.owner.assign(g.vertex_count(), UINT32_MAX);
    out.dist.assign(g.vertex_count(), Weight::infinity());
    while (!pq.empty()) {
        Entry e = pq.top();
        pq.pop();
        if (out.owner[e.v] != UINT32_MAX) continue;
        out.owner[e.v] = e.s;
        out.dist[e.v] = e.d;
        for (std::uint32_t i = 0, deg = g.degree(e.v); i < deg; ++i) {
            Dart d = g.rot_at(e.v, i);
            if (!g.usable(d)) continue;
            Vertex u = g.head(d);
            if (out.owner[u] == UINT32_MAX) pq.push({e.d + g.weight(d), e.s, u});
        }
    }
    return out;
}

AdditiveWeights random_weights(std::uint32_t count, std::mt19937_64& rng, bool with_inf) {
    AdditiveWeights w;
    w.omega.assign(count, Weight::zero());
    bool any = false;
    for (std::uint32_t s = 0; s < count; ++s) {
        if (with_inf && rng() % 4 == 0) {
            w.omega[s] = Weight::infinity();
        } else {
            w.omega[s] = Weight{rng() % 5000, 0};
            any = true;
        }
    }
    if (!any) w.omega[0] = Weight::zero();
    return w;
}

// Structural audit shared by the construction tests.
void audit_dual(const PlanarGraph& g, FaceId hole, const CellAssignment& cells,
                const VoronoiDual& vd) {
    if (vd.nodes.empty()) {
        CHECK(vd.edges.empty());
        CHECK(vd.leaves.empty());
        return;
    }
    CHECK(vd.leaf_count() == vd.internal_count() + 2);
    CHECK(vd.edges.size() + 1 == vd.nodes.size());

    for (const VoronoiDual::Node& n : vd.nodes) {
        if (n.leaf) continue;
        CHECK(n.sites[0] != n.sites[1]);
        CHECK(n.sites[1] != n.sites[2]);
        CHECK(n.sites[0] != n.sites[2]);
        for (int i = 0; i < 3; ++i) CHECK(n.nbr[i] != -1);
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::size_t i = 0; i < vd.edges.size(); ++i) {
        const VoronoiDual::Edge& e = vd.edges[i];
        CHECK(e.site_s < e.site_t);
        CHECK(pairs.insert({e.site_s, e.site_t}).second);
        CHECK(vd.edge_between(e.site_s, e.site_t) == static_cast<std::int32_t>(i));
        CHECK(vd.edge_between(e.site_t, e.site_s) == static_cast<std::int32_t>(i));
        for (EdgeId fe : e.fine) {
            std::uint32_t a = cells.owner[g.tail(2 * fe)];
            std::uint32_t b = cells.owner[g.head(2 * fe)];
            CHECK(std::min(a, b) == e.site_s);
            CHECK(std::max(a, b) == e.site_t);
        }
        for (std::size_t k = 0; k + 1 < e.fine.size(); ++k) {
            std::set<FaceId> fa = {g.face_of(2 * e.fine[k]), g.face_of(2 * e.fine[k] + 1)};
            std::set<FaceId> fb = {g.face_of(2 * e.fine[k + 1]), g.face_of(2 * e.fine[k + 1] + 1)};
            std::vector<FaceId> common;
            std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(),
                                  std::back_inserter(common));
            bool shares = false;
            for (FaceId f : common) shares = shares || f != hole;
            CHECK(shares);
        }
    }

    // Leaves sit on the hole in cyclic order, one per owner transition.
    std::vector<std::int32_t> hole_edge_index(g.edge_count(), -1);
    std::int32_t idx = 0;
    for (const Dart* it = g.face_begin(hole); it != g.face_end(hole); ++it)
        hole_edge_index[PlanarGraph::edge_of(*it)] = idx++;

    std::vector<std::int32_t> leaf_keys;
    for (std::int32_t id : vd.leaves) {
        const VoronoiDual::Node& n = vd.nodes[id];
        CHECK(n.leaf);
        const VoronoiDual::Edge& e = vd.edges[n.nbr[0]];
        EdgeId he = e.a == id ? e.fine.front() : e.fine.back();
        REQUIRE(hole_edge_index[he] != -1);
        leaf_keys.push_back(hole_edge_index[he]);
    }
    CHECK(std::is_sorted(leaf_keys.begin(), leaf_keys.end()));

    std::vector<std::int32_t> transitions;
    idx = 0;
    for (const Dart* it = g.face_begin(hole); it != g.face_end(hole); ++it, ++idx)
        if (cells.owner[g.tail(*it)] != cells.owner[g.head(*it)]) transitions.push_back(idx);
    CHECK(leaf_keys == transitions);
}

PlanarGraph tie_triangle(std::uint64_t l01, std::uint64_t l12, std::uint64_t l20) {
    std::vector<ArcSpec> arcs = {{0, 1, Weight{l01, 0}, Weight{l01, 0}},
                                 {1, 2, Weight{l12, 0}, Weight{l12, 0}},
                                 {2, 0, Weight{l20, 0}, Weight{l20, 0}}};
    std::vector<std::array<double, 2>> coords = {{0, 0}, {1, 0}, {0.5, 1}};
    return PlanarGraph::from_coords(3, std::move(arcs), std::move(coords), 1);
}

}  // namespace

// ════════════════════════════════════════════════════════════════════════

TEST_CASE("multi-source sweep matches the per-site argmin") {
    std::mt19937_64 rng(2024);
    std::vector<std::pair<PlanarGraph, FaceId>> instances;
    {
        PlanarGraph g = make_grid({4, 3, 17, 1000});
        FaceId hole = g.infinite_face();
        instances.emplace_back(std::move(g), hole);
    }
    for (NormalizeResult nr :
         {norm_grid(4, 4, 7, 3), norm_tri(6, 40, 19, 7), norm_tri(7, 30, 21, 11)})
        instances.emplace_back(std::move(nr.graph), nr.hole);

    for (const auto& [g, hole] : instances) {
        std::uint32_t sc = 0;
        for (const Dart* it = g.face_begin(hole); it != g.face_end(hole); ++it) ++sc;
        for (int round = 0; round < 4; ++round) {
            AdditiveWeights w = round == 0 ? AdditiveWeights{std::vector<Weight>(sc, Weight::zero())}
                                           : random_weights(sc, rng, round > 1);
            CellAssignment got = assign_cells_bruteforce(g, hole, w);
            CellAssignment want = sweep_oracle(g, hole, w);
            CHECK(got.owner == want.owner);
            CHECK(got.dist == want.dist);
        }
    }
}

TEST_CASE("a single enabled site owns every vertex") {
    NormalizeResult nr = norm_grid(4, 4, 7, 3);
    const PlanarGraph& g = nr.graph;
    std::vector<Vertex> sites = hole_sites(g, nr.hole);
    AdditiveWeights w;
    w.omega.assign(sites.size(), Weight::infinity());
    w.omega[2] = Weight{5, 0};

    CellAssignment cells = assign_cells_bruteforce(g, nr.hole, w);
    SsspResult ref = sssp(g, sites[2]);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        CHECK(cells.owner[v] == 2);
        CHECK(cells.dist[v] == w.omega[2] + ref.dist[v]);
    }
    std::vector<EdgeId> vd0 = extract_vd0(g, cells);
    CHECK(vd0.empty());
    VoronoiDual vd = contract_to_vdstar(g, nr.hole, vd0, cells);
    CHECK(vd.nodes.empty());
    CHECK(vd.internal_count() == 0);
    CHECK(vd.edge_between(0, 2) == -1);
}

TEST_CASE("distance ties fall to the larger weighted site") {
    PlanarGraph g = tie_triangle(9, 3, 3);
    FaceId hole = g.infinite_face();
    MsspHandle m = build_mssp(g, hole);
    std::uint32_t s0 = m.site_index(0), s1 = m.site_index(1), s2 = m.site_index(2);

    SUBCASE("equal weights break by site index") {
        AdditiveWeights w;
        w.omega.assign(3, Weight::infinity());
        w.omega[s0] = Weight::zero();
        w.omega[s1] = Weight::zero();
        CellAssignment cells = assign_cells_bruteforce(g, hole, w);
        CHECK(cells.owner[0] == s0);
        CHECK(cells.owner[1] == s1);
        CHECK(cells.owner[2] == std::max(s0, s1));
        CHECK(cells.dist[2] == Weight{3, 0});
    }
    SUBCASE("unequal weights break by the larger weight") {
        AdditiveWeights w;
        w.omega.assign(3, Weight::infinity());
        w.omega[s0] = Weight{2, 0};
        w.omega[s1] = Weight::zero();
        PlanarGraph g2 = tie_triangle(9, 5, 3);
        CellAssignment cells = assign_cells_bruteforce(g2, hole, w);
        CHECK(cells.dist[2] == Weight{5, 0});
        CHECK(cells.owner[2] == s0);
        CHECK(weighted_tie_beats(w, s0, s1));
        CHECK(!weighted_tie_beats(w, s1, s0));
        CHECK(!weighted_tie_beats(w, s1, s1));
    }
}

TEST_CASE("cells are connected subtrees of their site trees") {
    std::mt19937_64 rng(77);
    for (NormalizeResult nr : {norm_grid(4, 4, 7, 3), norm_tri(6, 40, 19, 7)}) {
        const PlanarGraph& g = nr.graph;
        std::vector<Vertex> sites = hole_sites(g, nr.hole);
        std::vector<SsspResult> per_site;
        for (Vertex sv : sites) per_site.push_back(sssp(g, sv));

        for (int round = 0; round < 3; ++round) {
            AdditiveWeights w = random_weights(static_cast<std::uint32_t>(sites.size()), rng, true);
            CellAssignment cells = assign_cells_bruteforce(g, nr.hole, w);
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                std::uint32_t s = cells.owner[v];
                CHECK(cells.dist[v] == w.omega[s] + per_site[s].dist[v]);
                if (v == sites[s]) continue;
                Dart p = per_site[s].parent[v];
                REQUIRE(p != kNone);
                CHECK(cells.owner[g.tail(p)] == s);
            }
        }
    }
}

TEST_CASE("source-distance weights align the diagram with the source tree") {
    for (NormalizeResult nr : {norm_grid(4, 4, 7, 3), norm_tri(6, 40, 19, 7)}) {
        const PlanarGraph& g = nr.graph;
        MsspHandle m = build_mssp(g, nr.hole);
        std::uint32_t sc = m.site_count();
        for (std::uint32_t x = 0; x < sc; ++x) {
            AdditiveWeights w;
            w.omega.reserve(sc);
            for (std::uint32_t s = 0; s < sc; ++s) w.omega.push_back(m.distance(x, m.site(s)));
            CellAssignment cells = assign_cells_bruteforce(g, nr.hole, w);
            std::vector<EdgeId> vd0 = extract_vd0(g, cells);

            SsspResult tx = sssp(g, m.site(x));
            // every site owns itself: the last site of a shortest path wins
            for (std::uint32_t s = 0; s < sc; ++s) CHECK(cells.owner[m.site(s)] == s);

            std::vector<EdgeId> in_tree;
            for (EdgeId e : vd0) {
                Dart d = 2 * e;
                if (tx.parent[g.head(d)] == d || tx.parent[g.head(d ^ 1)] == (d ^ 1))
                    in_tree.push_back(e);
            }
            std::vector<EdgeId> entering;
            for (std::uint32_t s = 0; s < sc; ++s) {
                if (s == x) continue;
                entering.push_back(PlanarGraph::edge_of(tx.parent[m.site(s)]));
            }
            std::sort(entering.begin(), entering.end());
            CHECK(in_tree == entering);

            // each contracted curve carries at most one tree edge
            VoronoiDual vd = contract_to_vdstar(g, nr.hole, vd0, cells);
            audit_dual(g, nr.hole, cells, vd);
            for (const VoronoiDual::Edge& e : vd.edges) {
                int cnt = 0;
                for (EdgeId fe : e.fine) {
                    Dart d = 2 * fe;
                    if (tx.parent[g.head(d)] == d || tx.parent[g.head(d ^ 1)] == (d ^ 1)) ++cnt;
                }
                CHECK(cnt <= 1);
            }
        }
    }
}

TEST_CASE("two enabled sites yield a single curve through the hole") {
    for (NormalizeResult nr : {norm_grid(4, 4, 7, 3), norm_tri(7, 30, 21, 11)}) {
        const PlanarGraph& g = nr.graph;
        std::vector<Vertex> sites = hole_sites(g, nr.hole);
        std::uint32_t sc = static_cast<std::uint32_t>(sites.size());
        std::uint32_t s = 1, t = sc / 2;
        AdditiveWeights w;
        w.omega.assign(sc, Weight::infinity());
        w.omega[s] = Weight::zero();
        w.omega[t] = Weight::zero();

        CellAssignment cells = assign_cells_bruteforce(g, nr.hole, w);
        std::vector<EdgeId> vd0 = extract_vd0(g, cells);
        REQUIRE(!vd0.empty());
        VoronoiDual vd = contract_to_vdstar(g, nr.hole, vd0, cells);
        audit_dual(g, nr.hole, cells, vd);
        REQUIRE(vd.nodes.size() == 2);
        CHECK(vd.nodes[0].leaf);
        CHECK(vd.nodes[1].leaf);
        CHECK(vd.internal_count() == 0);
        REQUIRE(vd.edges.size() == 1);
        CHECK(vd.edge_between(s, t) == 0);
        CHECK(vd.edge_between(t, s) == 0);

        std::vector<EdgeId> cyc = bisector(g, nr.hole, s, t, w);
        CHECK(cyc == vd.edges[0].fine);
        std::vector<EdgeId> sorted_cyc = cyc;
        std::sort(sorted_cyc.begin(), sorted_cyc.end());
        CHECK(sorted_cyc == vd0);
        CHECK((g.face_of(2 * cyc.front()) == nr.hole || g.face_of(2 * cyc.front() + 1) == nr.hole));
        CHECK((g.face_of(2 * cyc.back()) == nr.hole || g.face_of(2 * cyc.back() + 1) == nr.hole));
    }
}

TEST_CASE("three sites meet at a single trichromatic face") {
    NormalizeResult nr = norm_tri(6, 40, 19, 7);
    const PlanarGraph& g = nr.graph;
    std::vector<Vertex> sites = hole_sites(g, nr.hole);
    std::uint32_t sc = static_cast<std::uint32_t>(sites.size());
    std::uint32_t a = 0, b = sc / 3, c = 2 * sc / 3;
    AdditiveWeights w;
    w.omega.assign(sc, Weight::infinity());
    w.omega[a] = Weight::zero();
    w.omega[b] = Weight::zero();
    w.omega[c] = Weight::zero();

    CellAssignment cells = assign_cells_bruteforce(g, nr.hole, w);
    VoronoiDual vd = contract_to_vdstar(g, nr.hole, extract_vd0(g, cells), cells);
    audit_dual(g, nr.hole, cells, vd);
    REQUIRE(vd.internal_count() == 1);
    CHECK(vd.leaf_count() == 3);
    for (const VoronoiDual::Node& n : vd.nodes) {
        if (n.leaf) continue;
        std::set<std::uint32_t> got(n.sites.begin(), n.sites.end());
        CHECK(got == std::set<std::uint32_t>{a, b, c});
    }
}

TEST_CASE("a wheel hole pins five internal nodes and seven leaves") {
    // boundary degrees stay at three, so normalization keeps the hole at
    // seven vertices; with every site enabled each cell owns at least its
    // own vertex, giving seven arcs, and leaves = internal + 2 forces five
    std::vector<ArcSpec> arcs;
    std::vector<std::array<double, 2>> coords;
    for (int i = 0; i < 7; ++i) {
        double a = 2.0 * 3.14159265358979 * i / 7;
        coords.push_back({std::cos(a), std::sin(a)});
        std::uint64_t lb = 100 + 17 * i;
        arcs.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % 7),
                        Weight{lb, 0}, Weight{lb + 3, 0}});
    }
    coords.push_back({0, 0});
    for (int i = 0; i < 7; ++i) {
        std::uint64_t ls = 50 + 13 * i;
        arcs.push_back({static_cast<Vertex>(i), Vertex{7}, Weight{ls, 0}, Weight{ls + 1, 0}});
    }
    PlanarGraph wheel = PlanarGraph::from_coords(8, std::move(arcs), std::move(coords), 1);
    NormalizeResult nr = normalize(wheel, wheel.infinite_face());
    nr.graph.perturb(47);
    const PlanarGraph& g = nr.graph;
    std::vector<Vertex> sites = hole_sites(g, nr.hole);
    REQUIRE(sites.size() == 7);

    AdditiveWeights w;
    w.omega.assign(7, Weight::zero());
    CellAssignment cells = assign_cells_bruteforce(g, nr.hole, w);
    for (std::uint32_t s = 0; s < 7; ++s) CHECK(cells.owner[sites[s]] == s);
    VoronoiDual vd = contract_to_vdstar(g, nr.hole, extract_vd0(g, cells), cells);
    audit_dual(g, nr.hole, cells, vd);
    CHECK(vd.internal_count() == 5);
    CHECK(vd.leaf_count() == 7);
}

TEST_CASE("an exact weighted tie carves out the source subtree") {
    for (NormalizeResult nr : {norm_grid(4, 4, 7, 3), norm_tri(6, 40, 19, 7)}) {
        const PlanarGraph& g = nr.graph;
        MsspHandle m = build_mssp(g, nr.hole);
        std::uint32_t sc = m.site_count();
        std::uint32_t s = 0, t = sc / 2;
        auto data = m.site_data(s);

        AdditiveWeights w;
        w.omega.assign(sc, Weight::infinity());
        w.omega[s] = Weight::zero();
        w.omega[t] = m.distance(s, m.site(t));

        CellAssignment cells = assign_cells_bruteforce(g, nr.hole, w);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            bool under_t = data->tree.is_ancestor(m.site(t), v);
            CHECK(cells.owner[v] == (under_t ? t : s));
        }

        std::vector<EdgeId> cut;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            bool a = data->tree.is_ancestor(m.site(t), g.tail(2 * e));
            bool b = data->tree.is_ancestor(m.site(t), g.head(2 * e));
            if (a != b) cut.push_back(e);
        }
        std::vector<EdgeId> cyc = bisector(g, nr.hole, s, t, w);
        std::sort(cyc.begin(), cyc.end());
        CHECK(cyc == cut);

        // one tie unit past the distance and the cell collapses
        AdditiveWeights w2 = w;
        w2.omega[t] = Weight{w.omega[t].length, w.omega[t].tie + 1};
        CellAssignment c2 = assign_cells_bruteforce(g, nr.hole, w2);
        CHECK(extract_vd0(g, c2).empty());
        CHECK(bisector(g, nr.hole, s, t, w2).empty());
    }
}

TEST_CASE("construction is deterministic") {
    NormalizeResult nr = norm_tri(7, 35, 23, 13);
    const PlanarGraph& g = nr.graph;
    MsspHandle m = build_mssp(g, nr.hole);
    std::uint32_t sc = m.site_count();

    for (std::uint32_t k = 0; k < 5; ++k) {
        std::uint32_t x = k * sc / 5;
        AdditiveWeights w;
        for (std::uint32_t s = 0; s < sc; ++s) w.omega.push_back(m.distance(x, m.site(s)));
        CellAssignment c1 = assign_cells_bruteforce(g, nr.hole, w);
        CellAssignment c2 = assign_cells_bruteforce(g, nr.hole, w);
        CHECK(c1.owner == c2.owner);
        VoronoiDual v1 = contract_to_vdstar(g, nr.hole, extract_vd0(g, c1), c1);
        VoronoiDual v2 = contract_to_vdstar(g, nr.hole, extract_vd0(g, c2), c2);
        audit_dual(g, nr.hole, c1, v1);
        CHECK(v1.to_json() == v2.to_json());
        CHECK(v1.leaves == v2.leaves);
    }
}

TEST_CASE("malformed inputs are rejected") {
    NormalizeResult nr = norm_grid(4, 4, 7, 3);
    const PlanarGraph& g = nr.graph;
    std::uint32_t sc = 0;
    for (const Dart* it = g.face_begin(nr.hole); it != g.face_end(nr.hole); ++it) ++sc;

    AdditiveWeights bad;
    bad.omega.assign(sc + 1, Weight::zero());
    CHECK_THROWS_AS(assign_cells_bruteforce(g, nr.hole, bad), std::invalid_argument);

    AdditiveWeights none;
    none.omega.assign(sc, Weight::infinity());
    CHECK_THROWS_AS(assign_cells_bruteforce(g, nr.hole, none), std::invalid_argument);

    CHECK_THROWS_AS(assign_cells_bruteforce(g, g.face_count(), AdditiveWeights{}),
                    std::invalid_argument);

    // a non-triangulated interior face must be rejected by contraction
    PlanarGraph raw = make_grid({4, 4, 9, 100});
    AdditiveWeights w0;
    std::uint32_t rc = 0;
    for (const Dart* it = raw.face_begin(raw.infinite_face()); it != raw.face_end(raw.infinite_face());
         ++it)
        ++rc;
    w0.omega.assign(rc, Weight::zero());
    CellAssignment cells = assign_cells_bruteforce(raw, raw.infinite_face(), w0);
    CHECK_THROWS_AS(contract_to_vdstar(raw, raw.infinite_face(), extract_vd0(raw, cells), cells),
                    std::invalid_argument);
}
