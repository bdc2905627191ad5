#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "voracle/generators.hpp"
#include "voracle/mssp.hpp"

using namespace voracle;

static std::vector<Weight> brute_dist(const PlanarGraph& g, Vertex s) {
    std::vector<Weight> dist(g.vertex_count(), Weight::infinity());
    dist[s] = Weight::zero();
    for (std::uint32_t round = 0; round + 1 < g.vertex_count(); ++round) {
        bool changed = false;
        for (Dart d = 0; d < 2 * g.edge_count(); ++d) {
            if (!g.usable(d) || dist[g.tail(d)].is_infinite()) continue;
            Weight cand = dist[g.tail(d)] + g.weight(d);
            if (cand < dist[g.head(d)]) {
                dist[g.head(d)] = cand;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

static NormalizeResult norm_grid(std::uint32_t w, std::uint32_t h, std::uint64_t seed,
                                 std::uint64_t pseed) {
    PlanarGraph g = make_grid({w, h, seed, 1000});
    NormalizeResult nr = normalize(g, g.infinite_face());
    nr.graph.perturb(pseed);
    return nr;
}

static NormalizeResult norm_tri(std::uint32_t boundary, std::uint32_t target,
                                std::uint64_t seed, std::uint64_t pseed) {
    PlanarGraph g = make_random_triangulation({boundary, target, seed, 1000});
    NormalizeResult nr = normalize(g, g.infinite_face());
    nr.graph.perturb(pseed);
    return nr;
}

static PlanarGraph triangle() {
    std::vector<ArcSpec> arcs = {{0, 1, Weight{3, 0}, Weight{5, 0}},
                                 {1, 2, Weight{4, 0}, Weight{1, 0}},
                                 {2, 0, Weight{2, 0}, Weight{9, 0}}};
    std::vector<std::array<double, 2>> coords = {{0, 0}, {1, 0}, {0.5, 1}};
    return PlanarGraph::from_coords(3, std::move(arcs), std::move(coords), 1);
}

TEST_CASE("triangle hole yields three sites with exact trees") {
    PlanarGraph g = triangle();
    MsspHandle m = build_mssp(g, g.infinite_face());
    REQUIRE(m.site_count() == 3);
    std::set<Vertex> sset;
    for (std::uint32_t i = 0; i < 3; ++i) {
        sset.insert(m.site(i));
        CHECK(m.site_index(m.site(i)) == i);
        CHECK(m.distance(i, m.site(i)) == Weight::zero());
        auto want = brute_dist(g, m.site(i));
        for (Vertex v = 0; v < 3; ++v) CHECK(m.distance(i, v) == want[v]);
    }
    CHECK(sset.size() == 3);
}

TEST_CASE("distances match an independent search on normalized instances") {
    std::vector<NormalizeResult> inst;
    inst.push_back(norm_grid(4, 4, 11, 3));
    inst.push_back(norm_tri(6, 35, 19, 7));
    for (auto& nr : inst) {
        const PlanarGraph& g = nr.graph;
        MsspHandle m = build_mssp(g, nr.hole);
        CHECK(m.hole() == nr.hole);
        CHECK(m.site_count() == g.face_size(nr.hole));
        for (std::uint32_t s = 0; s < m.site_count(); s += 3) {
            auto want = sssp(g, m.site(s));
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                CHECK(m.distance(s, v) == want.dist[v]);
                CHECK(m.parent_dart(s, v) == want.parent[v]);
            }
        }
        auto bf = brute_dist(g, m.site(0));
        for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(m.distance(0, v) == bf[v]);
    }
}

TEST_CASE("cyclic indices follow the hole cycle") {
    NormalizeResult nr = norm_tri(5, 20, 4, 9);
    const PlanarGraph& g = nr.graph;
    MsspHandle m = build_mssp(g, nr.hole);
    std::uint32_t k = 0;
    for (const Dart* it = g.face_begin(nr.hole); it != g.face_end(nr.hole); ++it, ++k) {
        CHECK(m.site(k) == g.tail(*it));
        CHECK(m.site_index(g.tail(*it)) == k);
        CHECK(m.hole_edge_index(PlanarGraph::edge_of(*it)) == k);
        CHECK(m.hole_edge(k) == PlanarGraph::edge_of(*it));
        CHECK(m.hole_dart(k) == *it);
    }
    CHECK(k == m.site_count());
    // off-hole vertices and edges carry no index
    std::uint32_t none_v = 0, none_e = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (m.site_index(v) == kNone) ++none_v;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (m.hole_edge_index(e) == kNone) ++none_e;
    CHECK(none_v == g.vertex_count() - m.site_count());
    CHECK(none_e == g.edge_count() - m.site_count());
}

TEST_CASE("tree and cotree queries are exact and rooted where promised") {
    NormalizeResult nr = norm_grid(3, 4, 23, 5);
    const PlanarGraph& g = nr.graph;
    MsspHandle m = build_mssp(g, nr.hole);
    for (std::uint32_t s = 0; s < m.site_count(); s += 2) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            CHECK(m.is_ancestor(s, m.site(s), v));
            if (v != m.site(s)) {
                Dart pd = m.parent_dart(s, v);
                REQUIRE(pd != kNone);
                CHECK_FALSE(m.distance(s, g.tail(pd)) > m.distance(s, v));
            }
        }
        for (FaceId f = 0; f < g.face_count(); ++f) {
            CHECK(m.cotree_ancestor(s, f, m.cotree_depth(s, f)) == nr.hole);
            CHECK(m.cotree_lca(s, f, nr.hole) == nr.hole);
            if (f != nr.hole) CHECK_FALSE(m.cotree_parent_edge(s, f) == kNone);
        }
        CHECK(m.cotree_parent_edge(s, nr.hole) == kNone);
    }
}

TEST_CASE("preorder of unrelated hole vertices follows the cyclic order") {
    std::vector<NormalizeResult> inst;
    inst.push_back(norm_grid(4, 3, 31, 13));
    inst.push_back(norm_tri(7, 25, 37, 17));
    for (auto& nr : inst) {
        const PlanarGraph& g = nr.graph;
        MsspHandle m = build_mssp(g, nr.hole);
        std::uint32_t L = m.site_count();
        for (std::uint32_t s = 0; s < L; ++s) {
            for (std::uint32_t i = 0; i < L; ++i) {
                for (std::uint32_t j = i + 1; j < L; ++j) {
                    if (i == s || j == s) continue;
                    Vertex u = m.site(i), v = m.site(j);
                    if (m.is_ancestor(s, u, v) || m.is_ancestor(s, v, u)) continue;
                    std::uint32_t du = (i + L - s) % L, dv = (j + L - s) % L;
                    CHECK((m.preorder(s, u) < m.preorder(s, v)) == (du < dv));
                }
            }
        }
    }
}

TEST_CASE("probe counter counts exactly the counted queries") {
    PlanarGraph g = triangle();
    MsspHandle m = build_mssp(g, g.infinite_face());
    m.site_data(0);
    m.site_data(1);
    CHECK(m.probe_count() == 0);
    m.distance(0, 2);
    m.distance(1, 2);
    m.is_ancestor(0, 0, 1);
    m.preorder(0, 2);
    m.cotree_depth(1, 0);
    m.cotree_ancestor(1, 0, 0);
    m.cotree_parent_edge(1, g.infinite_face());
    m.cotree_lca(0, 0, 0);
    CHECK(m.probe_count() == 8);
    m.reset_probes();
    CHECK(m.probe_count() == 0);
}

TEST_CASE("eviction and rebuilds never change answers") {
    NormalizeResult nr = norm_tri(6, 24, 41, 21);
    const PlanarGraph& g = nr.graph;
    MsspHandle full = build_mssp(g, nr.hole);
    MsspHandle tight = build_mssp(g, nr.hole, MsspOptions{1});
    auto pinned = tight.site_data(0);  // survives every flush below
    for (std::uint32_t round = 0; round < 2; ++round) {
        for (std::uint32_t s = 0; s < full.site_count(); ++s) {
            for (Vertex v = 0; v < g.vertex_count(); v += 3) {
                CHECK(full.distance(s, v) == tight.distance(s, v));
                CHECK(full.parent_dart(s, v) == tight.parent_dart(s, v));
                CHECK(full.preorder(s, v) == tight.preorder(s, v));
            }
            CHECK(full.cotree_depth(s, 0) == tight.cotree_depth(s, 0));
        }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        CHECK(pinned->dist[v] == full.distance(0, v));
    CHECK(pinned->centroid.node_count() == g.vertex_count() - 1);
}

TEST_CASE("rejects holes that are not simple triangulation boundaries") {
    PlanarGraph raw = make_grid({3, 3, 1, 10});
    CHECK_THROWS_AS(build_mssp(raw, raw.infinite_face()), std::invalid_argument);

    NormalizeResult nr = norm_grid(3, 3, 1, 2);
    CHECK_THROWS_AS(build_mssp(nr.graph, nr.graph.face_count()), std::invalid_argument);

    MsspHandle m = build_mssp(nr.graph, nr.hole);
    CHECK_THROWS_AS(m.distance(m.site_count(), 0), std::invalid_argument);
}
