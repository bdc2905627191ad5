#include "voracle/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace voracle {

std::uint64_t random_length(std::uint64_t seed, std::uint64_t counter, std::uint64_t max_len) {
    return 1 + mix64(seed ^ (0x517cc1b727220a95ULL * (counter + 1))) % max_len;
}

PlanarGraph make_grid(const GridSpec& spec) {
    const std::uint32_t W = spec.width, H = spec.height;
    if (W < 2 || H < 2) throw std::invalid_argument("grid needs width and height at least 2");
    const std::uint32_t n = W * H;
    const std::uint32_t hcount = (W - 1) * H;
    auto vid = [&](std::uint32_t x, std::uint32_t y) { return y * W + x; };
    auto hedge = [&](std::uint32_t x, std::uint32_t y) { return y * (W - 1) + x; };
    auto vedge = [&](std::uint32_t x, std::uint32_t y) { return hcount + y * W + x; };

    std::vector<ArcSpec> arcs(hcount + W * (H - 1));
    std::uint64_t ctr = 0;
    auto fill = [&](EdgeId e, Vertex t, Vertex h) {
        arcs[e].tail = t;
        arcs[e].head = h;
        arcs[e].w = Weight{random_length(spec.seed, ctr++, spec.max_len), 0};
        arcs[e].wrev = Weight{random_length(spec.seed, ctr++, spec.max_len), 0};
    };
    for (std::uint32_t y = 0; y < H; ++y)
        for (std::uint32_t x = 0; x + 1 < W; ++x) fill(hedge(x, y), vid(x, y), vid(x + 1, y));
    for (std::uint32_t y = 0; y + 1 < H; ++y)
        for (std::uint32_t x = 0; x < W; ++x) fill(vedge(x, y), vid(x, y), vid(x, y + 1));

    // clockwise rotation with y up: north, east, south, west
    std::vector<std::vector<Dart>> rotations(n);
    for (std::uint32_t y = 0; y < H; ++y)
        for (std::uint32_t x = 0; x < W; ++x) {
            auto& r = rotations[vid(x, y)];
            if (y + 1 < H) r.push_back(2 * vedge(x, y));
            if (x + 1 < W) r.push_back(2 * hedge(x, y));
            if (y > 0) r.push_back(2 * vedge(x, y - 1) + 1);
            if (x > 0) r.push_back(2 * hedge(x - 1, y) + 1);
        }

    // the face left of the westward dart along the bottom row is outer
    PlanarGraph g(n, std::move(arcs), std::move(rotations), 2 * hedge(0, 0) + 1);
    std::vector<std::array<double, 2>> coords(n);
    for (std::uint32_t y = 0; y < H; ++y)
        for (std::uint32_t x = 0; x < W; ++x)
            coords[vid(x, y)] = {static_cast<double>(x), static_cast<double>(y)};
    g.set_coords(std::move(coords));
    return g;
}

PlanarGraph make_random_triangulation(const TriangulationSpec& spec) {
    const std::uint32_t L = spec.boundary;
    if (L < 3) throw std::invalid_argument("boundary cycle needs at least 3 vertices");

    std::uint64_t wctr = 0;
    auto next_w = [&] { return Weight{random_length(spec.seed, wctr++, spec.max_len), 0}; };

    // convex polygon fanned from vertex 0; the outer face is the hole
    std::vector<ArcSpec> arcs;
    for (std::uint32_t i = 0; i < L; ++i) {
        ArcSpec a{i, (i + 1) % L, next_w(), Weight::zero()};
        a.wrev = next_w();
        arcs.push_back(a);
    }
    for (std::uint32_t j = 2; j + 1 < L; ++j) {
        ArcSpec a{0, j, next_w(), Weight::zero()};
        a.wrev = next_w();
        arcs.push_back(a);
    }
    std::vector<std::array<double, 2>> coords(L);
    for (std::uint32_t i = 0; i < L; ++i) {
        double t = 2.0 * M_PI * i / L;
        coords[i] = {std::cos(t), std::sin(t)};
    }
    PlanarGraph g = PlanarGraph::from_coords(L, std::move(arcs), std::move(coords), 1);

    // grow by stellar subdivision of random internal faces
    std::uint64_t pick = 0;
    while (g.vertex_count() < spec.target_n) {
        std::uint32_t nf = g.face_count() - 1;
        std::uint32_t k = static_cast<std::uint32_t>(
            mix64(spec.seed ^ (0xd6e8feb86659fd93ULL * (++pick))) % nf);
        FaceId f = kNone;
        for (FaceId c = 0, seen = 0; c < g.face_count(); ++c) {
            if (c == g.infinite_face()) continue;
            if (seen++ == k) {
                f = c;
                break;
            }
        }
        if (g.face_size(f) != 3) throw std::logic_error("internal face is not a triangle");
        Dart p0 = g.face_dart(f, 0), p1 = g.face_dart(f, 1), p2 = g.face_dart(f, 2);
        Vertex a = g.tail(p0), b = g.tail(p1), c = g.tail(p2);
        Vertex z = g.vertex_count();

        std::vector<ArcSpec> na;
        na.reserve(g.edge_count() + 3);
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            na.push_back({g.tail(2 * e), g.head(2 * e), g.weight(2 * e), g.weight(2 * e + 1)});
        EdgeId ea = g.edge_count(), eb = ea + 1, ec = ea + 2;
        na.push_back({z, a, next_w(), next_w()});
        na.push_back({z, b, next_w(), next_w()});
        na.push_back({z, c, next_w(), next_w()});

        std::vector<std::vector<Dart>> rot(z + 1);
        for (Vertex v = 0; v < z; ++v) {
            for (std::uint32_t i = 0; i < g.degree(v); ++i) {
                Dart d = g.rot_at(v, i);
                if (d == p0) rot[v].push_back(2 * ea + 1);
                if (d == p1) rot[v].push_back(2 * eb + 1);
                if (d == p2) rot[v].push_back(2 * ec + 1);
                rot[v].push_back(d);
            }
        }
        rot[z] = {2 * ea, 2 * ec, 2 * eb};  // clockwise seen from inside the face

        std::vector<std::array<double, 2>> nc(z + 1);
        for (Vertex v = 0; v < z; ++v) nc[v] = g.coord(v);
        nc[z] = {(g.coord(a)[0] + g.coord(b)[0] + g.coord(c)[0]) / 3.0,
                 (g.coord(a)[1] + g.coord(b)[1] + g.coord(c)[1]) / 3.0};

        Dart hd = g.face_dart(g.infinite_face(), 0);
        PlanarGraph ng(z + 1, std::move(na), std::move(rot), hd, 0, /*simplify=*/false);
        ng.set_coords(std::move(nc));
        g = std::move(ng);
    }
    return g;
}

}  // namespace voracle
