#include "voracle/voronoi.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include "json.hpp"
#include "voracle/trees.hpp"

namespace voracle {

namespace {

// Hole boundary in face-cycle order.  Index k names both the k-th site
// (tail of the k-th boundary dart) and the k-th boundary edge.
struct HoleTrace {
  std::vector<Vertex> sites;
  std::vector<Dart> darts;
  std::vector<int32_t> site_index;       // by vertex, -1 off hole
  std::vector<int32_t> hole_edge_index;  // by edge, -1 off hole
};

HoleTrace trace_hole(const PlanarGraph& g, FaceId hole) {
  if (hole >= g.face_count()) throw std::invalid_argument("hole is not a face of the graph");
  HoleTrace t;
  t.site_index.assign(g.vertex_count(), -1);
  t.hole_edge_index.assign(g.edge_count(), -1);
  for (const Dart* it = g.face_begin(hole); it != g.face_end(hole); ++it) {
    Dart d = *it;
    Vertex v = g.tail(d);
    if (t.site_index[v] != -1) throw std::invalid_argument("hole cycle repeats vertex " + std::to_string(v));
    if (t.hole_edge_index[PlanarGraph::edge_of(d)] != -1) throw std::invalid_argument("hole cycle repeats an edge");
    t.site_index[v] = static_cast<int32_t>(t.sites.size());
    t.hole_edge_index[PlanarGraph::edge_of(d)] = static_cast<int32_t>(t.darts.size());
    t.sites.push_back(v);
    t.darts.push_back(d);
  }
  return t;
}

void require_triangles_off_hole(const PlanarGraph& g, FaceId hole) {
  for (FaceId f = 0; f < g.face_count(); ++f) {
    if (f == hole) continue;
    if (g.face_size(f) != 3) throw std::invalid_argument("graph is not triangulated away from the hole");
  }
}

}  // namespace

bool weighted_tie_beats(const AdditiveWeights& w, uint32_t cand, uint32_t inc) {
  const Weight& wc = w.omega[cand];
  const Weight& wi = w.omega[inc];
  if (wc != wi) return wi < wc;
  return cand > inc;
}

// ── cell assignment ──────────────────────────────────────────────

CellAssignment assign_cells_bruteforce(const PlanarGraph& g, FaceId hole, const AdditiveWeights& w) {
  HoleTrace t = trace_hole(g, hole);
  if (w.omega.size() != t.sites.size())
    throw std::invalid_argument("weight vector size does not match the number of hole vertices");

  CellAssignment out;
  out.owner.assign(g.vertex_count(), UINT32_MAX);
  out.dist.assign(g.vertex_count(), Weight::infinity());

  for (uint32_t s = 0; s < t.sites.size(); ++s) {
    if (w.omega[s].is_infinite()) continue;
    SsspResult r = sssp(g, t.sites[s]);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (r.dist[v].is_infinite()) continue;
      Weight cand = w.omega[s] + r.dist[v];
      bool take;
      if (out.owner[v] == UINT32_MAX)
        take = true;
      else if (cand != out.dist[v])
        take = cand < out.dist[v];
      else
        take = weighted_tie_beats(w, s, out.owner[v]);
      if (take) {
        out.owner[v] = s;
        out.dist[v] = cand;
      }
    }
  }

  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (out.owner[v] == UINT32_MAX)
      throw std::invalid_argument("vertex " + std::to_string(v) + " is unreachable from every enabled site");
  return out;
}

std::vector<EdgeId> extract_vd0(const PlanarGraph& g, const CellAssignment& cells) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    Dart d = 2 * e;
    if (cells.owner[g.tail(d)] != cells.owner[g.head(d)]) out.push_back(e);
  }
  return out;
}

// ── contraction to the coarse diagram ───────────────────────────
//
// Boundary faces of degree 2 are interior to a boundary curve and vanish.
// Faces of degree 3 survive as internal nodes; the hole face is split into
// one copy per incident boundary curve.  The result is a tree.

VoronoiDual contract_to_vdstar(const PlanarGraph& g, FaceId hole, const std::vector<EdgeId>& vd0,
                               const CellAssignment& cells) {
  require_triangles_off_hole(g, hole);
  HoleTrace trace = trace_hole(g, hole);

  std::vector<char> in_vd0(g.edge_count(), 0);
  for (EdgeId e : vd0) in_vd0[e] = 1;

  std::vector<uint8_t> deg(g.face_count(), 0);
  for (EdgeId e : vd0) {
    ++deg[g.face_of(2 * e)];
    ++deg[g.face_of(2 * e + 1)];
  }
  for (FaceId f = 0; f < g.face_count(); ++f) {
    if (f == hole) continue;
    if (deg[f] != 0 && deg[f] != 2 && deg[f] != 3)
      throw std::invalid_argument("boundary edges do not form closed curves");
  }

  VoronoiDual vd;
  if (vd0.empty()) return vd;

  // Internal nodes first, in face id order.  A degree-3 face has all three
  // of its edges on the boundary, so neighbor slots follow the face cycle.
  std::vector<int32_t> node_of_face(g.face_count(), -1);
  for (FaceId f = 0; f < g.face_count(); ++f) {
    if (f == hole || deg[f] != 3) continue;
    VoronoiDual::Node n;
    n.face = f;
    n.leaf = false;
    for (int i = 0; i < 3; ++i) {
      Dart d = g.face_dart(f, i);
      n.verts[i] = g.tail(d);
      n.sites[i] = cells.owner[g.tail(d)];
    }
    node_of_face[f] = static_cast<int32_t>(vd.nodes.size());
    vd.nodes.push_back(n);
  }

  std::vector<char> used(g.edge_count(), 0);

  auto other_face = [&](EdgeId e, FaceId f) {
    FaceId a = g.face_of(2 * e);
    FaceId b = g.face_of(2 * e + 1);
    return a == f ? b : a;
  };
  auto owner_pair = [&](EdgeId e) {
    uint32_t a = cells.owner[g.tail(2 * e)];
    uint32_t b = cells.owner[g.head(2 * e)];
    return std::pair<uint32_t, uint32_t>(std::min(a, b), std::max(a, b));
  };

  // Walks a curve from `from` through edge `e0`; returns the face it ends at
  // (the hole or a degree-3 face) with the fine edges appended in order.
  auto walk = [&](FaceId from, EdgeId e0, std::vector<EdgeId>& fine) {
    auto pair0 = owner_pair(e0);
    used[e0] = 1;
    fine.push_back(e0);
    FaceId cur = other_face(e0, from);
    EdgeId prev = e0;
    while (cur != hole && deg[cur] == 2) {
      EdgeId next = kNone;
      for (uint32_t i = 0; i < 3; ++i) {
        EdgeId e = PlanarGraph::edge_of(g.face_dart(cur, i));
        if (in_vd0[e] && e != prev) next = e;
      }
      if (next == kNone || used[next]) throw std::logic_error("boundary curve is not edge-simple");
      if (owner_pair(next) != pair0) throw std::logic_error("boundary curve changes its site pair");
      used[next] = 1;
      fine.push_back(next);
      prev = next;
      cur = other_face(next, cur);
    }
    return cur;
  };

  auto make_leaf = [&](EdgeId hole_edge) {
    VoronoiDual::Node n;
    n.face = hole;
    n.leaf = true;
    Dart d = trace.darts[trace.hole_edge_index[hole_edge]];
    n.verts[0] = g.tail(d);
    n.verts[1] = g.head(d);
    n.sites[0] = cells.owner[n.verts[0]];
    n.sites[1] = cells.owner[n.verts[1]];
    vd.nodes.push_back(n);
    return static_cast<int32_t>(vd.nodes.size()) - 1;
  };
  auto attach = [&](int32_t node, int32_t edge_id, EdgeId end_fine) {
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

  auto run_from = [&](FaceId from, int32_t from_node, EdgeId e0) {
    std::vector<EdgeId> fine;
    FaceId end = walk(from, e0, fine);
    int32_t b = end == hole ? make_leaf(fine.back()) : node_of_face[end];
    VoronoiDual::Edge edge;
    edge.a = from_node;
    edge.b = b;
    auto [s, t] = owner_pair(e0);
    edge.site_s = s;
    edge.site_t = t;
    edge.fine = std::move(fine);
    int32_t id = static_cast<int32_t>(vd.edges.size());
    vd.edges.push_back(std::move(edge));
    attach(from_node, id, vd.edges[id].fine.front());
    attach(b, id, vd.edges[id].fine.back());
  };

  // Curves that touch the hole, in boundary cyclic order; then curves
  // between internal nodes, in face id order.
  for (uint32_t k = 0; k < trace.darts.size(); ++k) {
    EdgeId e = PlanarGraph::edge_of(trace.darts[k]);
    if (!in_vd0[e] || used[e]) continue;
    run_from(hole, make_leaf(e), e);
  }
  for (FaceId f = 0; f < g.face_count(); ++f) {
    if (node_of_face[f] == -1) continue;
    for (int i = 0; i < 3; ++i) {
      EdgeId e = PlanarGraph::edge_of(g.face_dart(f, i));
      if (!used[e]) run_from(f, node_of_face[f], e);
    }
  }
  for (EdgeId e : vd0)
    if (!used[e]) throw std::logic_error("boundary contains a closed curve avoiding the hole");

  // Structural audit: a tree whose internal nodes all have degree 3.
  if (vd.edges.size() + 1 != vd.nodes.size()) throw std::logic_error("coarse diagram is not a tree");
  {
    std::vector<char> seen(vd.nodes.size(), 0);
    std::queue<int32_t> q;
    q.push(0);
    seen[0] = 1;
    size_t cnt = 1;
    while (!q.empty()) {
      int32_t u = q.front();
      q.pop();
      const VoronoiDual::Node& n = vd.nodes[u];
      int limit = n.leaf ? 1 : 3;
      for (int i = 0; i < limit; ++i) {
        if (n.nbr[i] == -1) {
          if (!n.leaf) throw std::logic_error("internal node is missing a curve");
          continue;
        }
        const VoronoiDual::Edge& ed = vd.edges[n.nbr[i]];
        int32_t v = ed.a == u ? ed.b : ed.a;
        if (!seen[v]) {
          seen[v] = 1;
          ++cnt;
          q.push(v);
        }
      }
    }
    if (cnt != vd.nodes.size()) throw std::logic_error("coarse diagram is disconnected");
  }

  std::map<std::pair<uint32_t, uint32_t>, int32_t> pair_seen;
  for (size_t i = 0; i < vd.edges.size(); ++i) {
    auto key = std::make_pair(vd.edges[i].site_s, vd.edges[i].site_t);
    if (!pair_seen.emplace(key, static_cast<int32_t>(i)).second)
      throw std::logic_error("two curves separate the same site pair");
  }

  for (size_t i = 0; i < vd.nodes.size(); ++i)
    if (vd.nodes[i].leaf) vd.leaves.push_back(static_cast<int32_t>(i));
  std::sort(vd.leaves.begin(), vd.leaves.end(), [&](int32_t a, int32_t b) {
    auto key = [&](int32_t id) {
      const VoronoiDual::Edge& ed = vd.edges[vd.nodes[id].nbr[0]];
      EdgeId he = ed.a == id ? ed.fine.front() : ed.fine.back();
      return trace.hole_edge_index[he];
    };
    return key(a) < key(b);
  });
  return vd;
}

int32_t VoronoiDual::edge_between(uint32_t s, uint32_t t) const {
  if (s > t) std::swap(s, t);
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].site_s == s && edges[i].site_t == t) return static_cast<int32_t>(i);
  return -1;
}

std::uint32_t VoronoiDual::internal_count() const {
  return static_cast<std::uint32_t>(nodes.size() - leaves.size());
}

std::string VoronoiDual::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const Node& n : nodes) {
    nlohmann::json jn;
    jn["face"] = n.face;
    jn["leaf"] = n.leaf;
    int k = n.leaf ? 2 : 3;
    jn["verts"] = std::vector<uint32_t>(n.verts.begin(), n.verts.begin() + k);
    jn["sites"] = std::vector<uint32_t>(n.sites.begin(), n.sites.begin() + k);
    jn["nbr"] = std::vector<int32_t>(n.nbr.begin(), n.nbr.begin() + (n.leaf ? 1 : 3));
    j["nodes"].push_back(std::move(jn));
  }
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : edges) {
    nlohmann::json je;
    je["a"] = e.a;
    je["b"] = e.b;
    je["sites"] = {e.site_s, e.site_t};
    je["fine"] = e.fine;
    j["edges"].push_back(std::move(je));
  }
  j["leaves"] = leaves;
  return j.dump(2);
}

// ── two-site boundary curve ──────────────────────────────────────

std::vector<EdgeId> bisector(const PlanarGraph& g, FaceId hole, uint32_t s, uint32_t t,
                             const AdditiveWeights& w) {
  HoleTrace trace = trace_hole(g, hole);
  if (s >= trace.sites.size() || t >= trace.sites.size() || s == t)
    throw std::invalid_argument("bisector needs two distinct hole sites");
  if (w.omega[s].is_infinite() || w.omega[t].is_infinite())
    throw std::invalid_argument("bisector sites must have finite weights");
  require_triangles_off_hole(g, hole);

  AdditiveWeights w2;
  w2.omega.assign(trace.sites.size(), Weight::infinity());
  w2.omega[s] = w.omega[s];
  w2.omega[t] = w.omega[t];
  CellAssignment cells = assign_cells_bruteforce(g, hole, w2);
  std::vector<EdgeId> vd0 = extract_vd0(g, cells);
  if (vd0.empty()) return {};

  std::vector<char> in_vd0(g.edge_count(), 0);
  for (EdgeId e : vd0) in_vd0[e] = 1;

  // With two sites every face has 0 or 2 boundary edges, so the boundary is
  // one cycle through the hole.  Start at the smaller boundary index.
  EdgeId start = kNone;
  for (const Dart& d : trace.darts) {
    EdgeId e = PlanarGraph::edge_of(d);
    if (in_vd0[e]) {
      start = e;
      break;
    }
  }
  if (start == kNone) throw std::logic_error("two-site boundary avoids the hole");

  std::vector<EdgeId> out;
  std::vector<char> used(g.edge_count(), 0);
  out.push_back(start);
  used[start] = 1;
  FaceId cur = g.face_of(2 * start) == hole ? g.face_of(2 * start + 1) : g.face_of(2 * start);
  EdgeId prev = start;
  while (cur != hole) {
    EdgeId next = kNone;
    for (uint32_t i = 0; i < g.face_size(cur); ++i) {
      EdgeId e = PlanarGraph::edge_of(g.face_dart(cur, i));
      if (in_vd0[e] && e != prev) next = e;
    }
    if (next == kNone || used[next]) throw std::logic_error("two-site boundary is not a simple cycle");
    used[next] = 1;
    out.push_back(next);
    prev = next;
    cur = g.face_of(2 * next) == cur ? g.face_of(2 * next + 1) : g.face_of(2 * next);
  }
  if (out.size() != vd0.size()) throw std::logic_error("two-site boundary is not a single cycle");
  return out;
}

}  // namespace voracle
