#pragma once

#include <iosfwd>
#include <string>

#include "voracle/planar_graph.hpp"

namespace voracle {

// ════════════════════════════════════════════════════════════════════════
//  Graph files.
//
//  Text form:
//      pg <n> <m> <hole-dart|-1> <perturb-seed>
//      arc <id> <tail> <head> <len> [<rev-len>]      len: uint64 or "inf"
//      rot <v> <dart> <dart> ...                     clockwise
//      coord <v> <x> <y>
//  Arc ids must be sequential from 0; a missing reverse length means the
//  arc is symmetric. Rotations are all-or-none; without them every
//  vertex needs a coordinate and rotations are derived clockwise.
//  Blank lines and "#" comments are ignored. A nonzero perturbation seed
//  is reapplied on load, so stored lengths plus the header reproduce the
//  exact weights. The ".json" extension selects an equivalent JSON
//  object with keys n, hole_dart, perturb_seed, arcs, rotations, coords.
// ════════════════════════════════════════════════════════════════════════

PlanarGraph load_graph(const std::string& path);
void save_graph(const PlanarGraph& g, const std::string& path);

PlanarGraph parse_graph_text(std::istream& in);
void write_graph_text(const PlanarGraph& g, std::ostream& out);
PlanarGraph parse_graph_json(std::istream& in);
void write_graph_json(const PlanarGraph& g, std::ostream& out);

}  // namespace voracle
