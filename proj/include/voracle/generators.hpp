#pragma once

#include <cstdint>

#include "voracle/planar_graph.hpp"

namespace voracle {

struct GridSpec {
    std::uint32_t width = 4;
    std::uint32_t height = 4;
    std::uint64_t seed = 1;
    std::uint64_t max_len = 1000000;  // arc lengths drawn from [1, max_len]
};

/// Axis-aligned grid with unit-square coordinates, independent random
/// lengths per direction, clockwise rotations, and the outer face
/// designated infinite. Vertex (x, y) has id y * width + x.
PlanarGraph make_grid(const GridSpec& spec);

struct TriangulationSpec {
    std::uint32_t boundary = 6;   // outer cycle length, at least 3
    std::uint32_t target_n = 30;  // grown by repeated face subdivision
    std::uint64_t seed = 1;
    std::uint64_t max_len = 1000000;
};

/// Random triangulated disk: a convex polygon fan subdivided by adding
/// a vertex inside a random internal face until target_n vertices
/// exist. Every face except the outer one is a triangle; the outer face
/// is designated infinite. Lengths are independent per direction.
PlanarGraph make_random_triangulation(const TriangulationSpec& spec);

/// Deterministic length stream shared by the generators.
std::uint64_t random_length(std::uint64_t seed, std::uint64_t counter, std::uint64_t max_len);

}  // namespace voracle
