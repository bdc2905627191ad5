#include "voracle/planar_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace voracle {

namespace {

std::string describe_dart(Dart d) {
    return "dart " + std::to_string(d) + " (edge " + std::to_string(d >> 1) + ")";
}

struct SimplifyOut {
    std::vector<ArcSpec> arcs;
    std::vector<std::vector<Dart>> rotations;
    std::vector<Dart> dart_map;  // old dart -> new dart or kNone
};

// Merges arcs sharing an unordered endpoint pair into the lowest-id
// member (per-direction minimum weights) and drops self-loops. Rotation
// order of surviving darts is preserved.
SimplifyOut simplify_arcs(std::uint32_t n, const std::vector<ArcSpec>& arcs,
                          const std::vector<std::vector<Dart>>& rotations) {
    const std::uint32_t m = static_cast<std::uint32_t>(arcs.size());
    std::map<std::pair<Vertex, Vertex>, EdgeId> survivor;
    std::vector<EdgeId> merged_into(m, kNone);
    std::vector<char> flipped(m, 0);

    for (EdgeId e = 0; e < m; ++e) {
        const auto& a = arcs[e];
        if (a.tail == a.head) continue;  // self-loop, dropped
        auto key = std::minmax(a.tail, a.head);
        auto [it, fresh] = survivor.try_emplace({key.first, key.second}, e);
        merged_into[e] = it->second;
        flipped[e] = (a.tail != arcs[it->second].tail) ? 1 : 0;
    }

    SimplifyOut out;
    std::vector<EdgeId> new_id(m, kNone);
    for (EdgeId e = 0; e < m; ++e) {
        if (merged_into[e] != e) continue;
        new_id[e] = static_cast<EdgeId>(out.arcs.size());
        ArcSpec s = arcs[e];
        s.wrev = arcs[e].wrev;
        out.arcs.push_back(s);
    }
    for (EdgeId e = 0; e < m; ++e) {
        EdgeId tgt = merged_into[e];
        if (tgt == kNone || tgt == e) continue;
        ArcSpec& s = out.arcs[new_id[tgt]];
        const ArcSpec& a = arcs[e];
        Weight fwd = flipped[e] ? a.wrev : a.w;
        Weight rev = flipped[e] ? a.w : a.wrev;
        if (fwd < s.w) s.w = fwd;
        if (rev < s.wrev) s.wrev = rev;
    }

    out.dart_map.assign(2 * m, kNone);
    for (EdgeId e = 0; e < m; ++e) {
        EdgeId tgt = merged_into[e];
        if (tgt == kNone || tgt != e) continue;  // only survivors keep darts
        out.dart_map[2 * e] = 2 * new_id[e];
        out.dart_map[2 * e + 1] = 2 * new_id[e] + 1;
    }
    out.rotations.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        for (Dart d : rotations[v]) {
            Dart nd = out.dart_map[d];
            if (nd != kNone) out.rotations[v].push_back(nd);
        }
    }
    return out;
}

}  // namespace

// ────────────────────────────────────────────────────────────────────────
//  Construction
// ────────────────────────────────────────────────────────────────────────

PlanarGraph::PlanarGraph(std::uint32_t n, std::vector<ArcSpec> arcs,
                         std::vector<std::vector<Dart>> rotations,
                         Dart hole_dart, std::uint64_t perturb_seed, bool simplify) {
    if (n == 0 || arcs.empty()) throw std::invalid_argument("graph needs vertices and edges");
    if (rotations.size() != n) throw std::invalid_argument("rotation list size mismatch");
    const std::uint32_t m0 = static_cast<std::uint32_t>(arcs.size());
    for (EdgeId e = 0; e < m0; ++e) {
        if (arcs[e].tail >= n || arcs[e].head >= n)
            throw std::invalid_argument("arc " + std::to_string(e) + " has endpoint out of range");
    }
    {
        std::vector<char> seen(2 * m0, 0);
        for (Vertex v = 0; v < n; ++v) {
            for (Dart d : rotations[v]) {
                if (d >= 2 * m0) throw std::invalid_argument(describe_dart(d) + " out of range");
                if (seen[d]) throw std::invalid_argument(describe_dart(d) + " listed twice");
                seen[d] = 1;
                Vertex t = (d & 1) ? arcs[d >> 1].head : arcs[d >> 1].tail;
                if (t != v)
                    throw std::invalid_argument(describe_dart(d) + " listed at vertex " +
                                                std::to_string(v) + " but has tail " +
                                                std::to_string(t));
            }
        }
        for (Dart d = 0; d < 2 * m0; ++d)
            if (!seen[d]) throw std::invalid_argument(describe_dart(d) + " missing from rotations");
    }

    Dart mapped_hole = hole_dart;
    if (simplify) {
        SimplifyOut s = simplify_arcs(n, arcs, rotations);
        if (s.arcs.empty()) throw std::invalid_argument("graph has no edges after simplification");
        if (hole_dart != kNone) {
            mapped_hole = s.dart_map[hole_dart];
            if (mapped_hole == kNone) {
                // hole dart merged away: redirect to the survivor's matching side
                EdgeId e = hole_dart >> 1;
                for (EdgeId o = 0; o < m0; ++o) {
                    auto ko = std::minmax(arcs[o].tail, arcs[o].head);
                    auto ke = std::minmax(arcs[e].tail, arcs[e].head);
                    if (ko == ke && s.dart_map[2 * o] != kNone) {
                        bool flip = arcs[o].tail != arcs[e].tail;
                        mapped_hole = s.dart_map[2 * o] | ((hole_dart & 1) ^ (flip ? 1u : 0u));
                        break;
                    }
                }
                if (mapped_hole == kNone)
                    throw std::invalid_argument("hole dart lies on a dropped self-loop");
            }
        }
        arcs = std::move(s.arcs);
        rotations = std::move(s.rotations);
    }

    const std::uint32_t m = static_cast<std::uint32_t>(arcs.size());
    n_ = n;
    head_.resize(2 * m);
    weight_.resize(2 * m);
    for (EdgeId e = 0; e < m; ++e) {
        head_[2 * e] = arcs[e].head;
        head_[2 * e + 1] = arcs[e].tail;
        weight_[2 * e] = arcs[e].w;
        weight_[2 * e + 1] = arcs[e].wrev;
    }
    rot_off_.assign(n + 1, 0);
    rot_.clear();
    rot_.reserve(2 * m);
    for (Vertex v = 0; v < n; ++v) {
        rot_off_[v] = static_cast<std::uint32_t>(rot_.size());
        rot_.insert(rot_.end(), rotations[v].begin(), rotations[v].end());
    }
    rot_off_[n] = static_cast<std::uint32_t>(rot_.size());

    index_rotations();
    validate();
    build_faces();

    // Euler characteristic test rejects rotation systems of positive genus.
    std::int64_t chi = static_cast<std::int64_t>(n_) - static_cast<std::int64_t>(m) +
                       static_cast<std::int64_t>(face_count());
    if (chi != 2)
        throw std::invalid_argument("rotation system is not planar (Euler characteristic " +
                                    std::to_string(chi) + ")");

    if (mapped_hole != kNone) infinite_face_ = face_of_[mapped_hole];
    if (perturb_seed != 0) perturb(perturb_seed);
}

PlanarGraph PlanarGraph::from_coords(std::uint32_t n, std::vector<ArcSpec> arcs,
                                     std::vector<std::array<double, 2>> coords,
                                     Dart hole_dart, std::uint64_t perturb_seed) {
    if (coords.size() != n) throw std::invalid_argument("coordinate list size mismatch");
    std::vector<std::vector<std::pair<double, Dart>>> at(n);
    for (EdgeId e = 0; e < arcs.size(); ++e) {
        const auto& a = arcs[e];
        if (a.tail == a.head) throw std::invalid_argument("self-loop cannot be embedded by coordinates");
        auto ang = [&](Vertex from, Vertex to) {
            double dx = coords[to][0] - coords[from][0];
            double dy = coords[to][1] - coords[from][1];
            if (dx == 0.0 && dy == 0.0)
                throw std::invalid_argument("coincident coordinates on edge " + std::to_string(e));
            return std::atan2(dy, dx);
        };
        at[a.tail].push_back({ang(a.tail, a.head), 2 * e});
        at[a.head].push_back({ang(a.head, a.tail), 2 * e + 1});
    }
    std::vector<std::vector<Dart>> rotations(n);
    for (Vertex v = 0; v < n; ++v) {
        auto& lst = at[v];
        // clockwise = descending angle
        std::sort(lst.begin(), lst.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t i = 1; i < lst.size(); ++i)
            if (lst[i].first == lst[i - 1].first)
                throw std::invalid_argument("ambiguous rotation at vertex " + std::to_string(v));
        for (auto& [_, d] : lst) rotations[v].push_back(d);
    }
    PlanarGraph g(n, std::move(arcs), std::move(rotations), hole_dart, perturb_seed);
    g.set_coords(std::move(coords));
    return g;
}

void PlanarGraph::index_rotations() {
    rot_pos_.assign(rot_.size(), 0);
    for (std::uint32_t i = 0; i < rot_.size(); ++i) rot_pos_[rot_[i]] = i;
}

void PlanarGraph::validate() const {
    if (rot_.size() != head_.size())
        throw std::invalid_argument("rotations do not cover every dart exactly once");
    // connectivity over the underlying undirected graph
    std::vector<char> vis(n_, 0);
    std::vector<Vertex> stack{0};
    vis[0] = 1;
    std::uint32_t reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (std::uint32_t i = rot_off_[v]; i < rot_off_[v + 1]; ++i) {
            Vertex w = head_[rot_[i]];
            if (!vis[w]) {
                vis[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != n_) {
        Vertex other = kNone;
        for (Vertex v = 0; v < n_; ++v)
            if (!vis[v]) {
                other = v;
                break;
            }
        throw std::invalid_argument("graph is disconnected (vertex 0 cannot reach vertex " +
                                    std::to_string(other) + ")");
    }
}

void PlanarGraph::build_faces() {
    const std::uint32_t nd = dart_count();
    face_of_.assign(nd, kNone);
    face_off_.clear();
    face_darts_.clear();
    face_darts_.reserve(nd);
    face_off_.push_back(0);
    for (Dart d0 = 0; d0 < nd; ++d0) {
        if (face_of_[d0] != kNone) continue;
        FaceId f = static_cast<FaceId>(face_off_.size() - 1);
        Dart d = d0;
        do {
            face_of_[d] = f;
            face_darts_.push_back(d);
            d = face_next(d);
        } while (d != d0);
        face_off_.push_back(static_cast<std::uint32_t>(face_darts_.size()));
    }
}

std::uint32_t PlanarGraph::finite_degree(Vertex v) const {
    std::uint32_t c = 0;
    for (std::uint32_t i = rot_off_[v]; i < rot_off_[v + 1]; ++i)
        if (edge_usable(edge_of(rot_[i]))) ++c;
    return c;
}

void PlanarGraph::set_infinite_face(FaceId f) {
    if (f != kNone && f >= face_count()) throw std::invalid_argument("face id out of range");
    infinite_face_ = f;
}

void PlanarGraph::set_coords(std::vector<std::array<double, 2>> c) {
    if (!c.empty() && c.size() != n_) throw std::invalid_argument("coordinate list size mismatch");
    coords_ = std::move(c);
}

void PlanarGraph::perturb(std::uint64_t seed) {
    for (Dart d = 0; d < dart_count(); ++d)
        weight_[d].tie = usable(d) ? tie_for_dart(seed, d) : 0;
    perturb_seed_ = seed;
}

void PlanarGraph::check_invariants() const {
    const std::uint32_t nd = dart_count();
    if (rot_.size() != nd || rot_pos_.size() != nd || face_of_.size() != nd)
        throw std::logic_error("dart table sizes disagree");
    for (Dart d = 0; d < nd; ++d) {
        if (rot_[rot_pos_[d]] != d) throw std::logic_error("rotation index broken");
        if (tail(d) != head(twin(d))) throw std::logic_error("twin involution broken");
        if (face_of_[face_next(d)] != face_of_[d]) throw std::logic_error("face closure broken");
    }
    std::vector<char> seen(nd, 0);
    for (FaceId f = 0; f < face_count(); ++f) {
        for (const Dart* it = face_begin(f); it != face_end(f); ++it) {
            if (seen[*it]) throw std::logic_error("dart on two faces");
            seen[*it] = 1;
            if (face_of_[*it] != f) throw std::logic_error("face table inconsistent");
        }
    }
    std::int64_t chi = static_cast<std::int64_t>(n_) - static_cast<std::int64_t>(edge_count()) +
                       static_cast<std::int64_t>(face_count());
    if (chi != 2) throw std::logic_error("Euler characteristic is not 2");
}

// ────────────────────────────────────────────────────────────────────────
//  Triangulation (shared by normalize and region complements)
// ────────────────────────────────────────────────────────────────────────

namespace {

struct ChordPlan {
    std::vector<ArcSpec> arcs;                       // chords only
    std::vector<FaceId> source_face;                 // chord -> face it filled
    std::unordered_map<Dart, std::vector<Dart>> insert_before;
};

// Cuts ears off one polygonal face until a triangle remains. The first
// cut takes the corner at the cycle start, later cuts alternate between
// the two ends of the shrinking polygon. New chord ids start at
// `next_edge` and all chords are unusable in both directions.
void plan_face_chords(const PlanarGraph& g, FaceId f, EdgeId& next_edge, ChordPlan& plan) {
    std::vector<Dart> P(g.face_begin(f), g.face_end(f));
    auto tail_of = [&](Dart d) -> Vertex {
        // chord darts are not in g; their tails are tracked via the plan arcs
        if (d < g.dart_count()) return g.tail(d);
        const ArcSpec& a = plan.arcs[(d >> 1) - g.edge_count()];
        return (d & 1) ? a.head : a.tail;
    };
    bool front = true;
    bool first = true;
    while (P.size() >= 4) {
        const std::size_t L = P.size();
        std::size_t t1, t2;
        if (front) {
            t1 = 1;
            t2 = L - 1;
        } else {
            t1 = 0;
            t2 = L - 2;
        }
        Vertex a = tail_of(P[t1]), b = tail_of(P[t2]);
        if (a == b)
            throw std::runtime_error("cannot triangulate a face that repeats vertex " +
                                     std::to_string(a));
        EdgeId ce = next_edge++;
        Dart cf = 2 * ce, cr = 2 * ce + 1;
        plan.arcs.push_back({a, b, Weight::infinity(), Weight::infinity()});
        plan.source_face.push_back(f);
        plan.insert_before[P[t1]].push_back(cf);
        plan.insert_before[P[t2]].push_back(cr);
        std::vector<Dart> kept;
        kept.reserve(L - 1);
        if (front) {
            kept.insert(kept.end(), P.begin() + 1, P.end() - 1);
            kept.push_back(cr);
        } else {
            kept.insert(kept.end(), P.begin(), P.end() - 2);
            kept.push_back(cr);
        }
        P = std::move(kept);
        front = first ? true : !front;
        first = false;
    }
}

// Applies a chord plan: rebuilds rotations with chord darts spliced in
// front of their anchors (later inserts end up nearer the anchor).
PlanarGraph apply_chord_plan(const PlanarGraph& g, const ChordPlan& plan,
                             std::vector<EdgeId>* chord_source) {
    const std::uint32_t m0 = g.edge_count();
    std::vector<ArcSpec> arcs;
    arcs.reserve(m0 + plan.arcs.size());
    for (EdgeId e = 0; e < m0; ++e)
        arcs.push_back({g.tail(2 * e), g.head(2 * e), g.weight(2 * e), g.weight(2 * e + 1)});
    arcs.insert(arcs.end(), plan.arcs.begin(), plan.arcs.end());

    std::vector<std::vector<Dart>> rotations(g.vertex_count());
    std::vector<Dart> work;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto& out = rotations[v];
        work.clear();
        for (std::uint32_t i = g.degree(v); i-- > 0;) work.push_back(g.rot_at(v, i));
        // depth-first splice: everything inserted before X precedes X
        while (!work.empty()) {
            Dart x = work.back();
            work.pop_back();
            auto it = plan.insert_before.find(x);
            if (it != plan.insert_before.end()) {
                // re-visit x after its pending inserts
                work.push_back(x | 0x80000000u);
                for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit)
                    work.push_back(*rit);
            } else {
                out.push_back(x & 0x7fffffffu);
            }
        }
        // second pass entries marked with the high bit skip their inserts
        for (Dart& d : out) d &= 0x7fffffffu;
    }

    if (chord_source) *chord_source = plan.source_face;

    Dart hole_dart = kNone;
    if (g.infinite_face() != kNone) hole_dart = g.face_dart(g.infinite_face(), 0);
    PlanarGraph out(g.vertex_count(), std::move(arcs), std::move(rotations), hole_dart,
                    0, /*simplify=*/false);
    if (g.has_coords()) {
        std::vector<std::array<double, 2>> c(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) c[v] = g.coord(v);
        out.set_coords(std::move(c));
    }
    return out;
}

}  // namespace

PlanarGraph triangulate_faces(const PlanarGraph& g, const std::vector<FaceId>& skip,
                              std::uint32_t* chords_added) {
    std::vector<char> skipf(g.face_count(), 0);
    for (FaceId f : skip)
        if (f != kNone) skipf[f] = 1;
    ChordPlan plan;
    EdgeId next_edge = g.edge_count();
    for (FaceId f = 0; f < g.face_count(); ++f)
        if (!skipf[f] && g.face_size(f) >= 4) plan_face_chords(g, f, next_edge, plan);
    if (chords_added) *chords_added = static_cast<std::uint32_t>(plan.arcs.size());
    if (plan.arcs.empty()) return g;
    return apply_chord_plan(g, plan, nullptr);
}

// ────────────────────────────────────────────────────────────────────────
//  Normalization
// ────────────────────────────────────────────────────────────────────────

NormalizeResult normalize(const PlanarGraph& g, FaceId hole) {
    if (hole == kNone || hole >= g.face_count())
        throw std::invalid_argument("normalize needs a valid hole face");

    const std::uint32_t n0 = g.vertex_count();
    const std::uint32_t m0 = g.edge_count();

    NormalizeResult res;
    res.rep.resize(n0);
    res.chain_off.assign(n0 + 1, 0);

    // ── phase 1: expand high-degree vertices into gadget paths ─────────
    std::uint32_t n1 = 0;
    for (Vertex v = 0; v < n0; ++v) {
        std::uint32_t d = g.degree(v);
        std::uint32_t copies = d >= 4 ? d - 1 : 1;
        res.rep[v] = n1;
        res.chain_off[v] = n1;
        n1 += copies;
    }
    res.chain_off[n0] = n1;
    res.orig_vertex.resize(n1);
    res.chain.resize(n1);
    for (Vertex v = 0; v < n0; ++v)
        for (std::uint32_t c = res.chain_off[v]; c < res.chain_off[v + 1]; ++c) {
            res.orig_vertex[c] = v;
            res.chain[c] = c;  // copies are numbered consecutively
        }

    // copy holding rotation slot i of original vertex v
    auto slot_copy = [&](Vertex v, std::uint32_t i) -> Vertex {
        if (g.degree(v) < 4) return res.rep[v];
        return res.rep[v] + (i <= 1 ? 0 : i - 1);
    };

    std::vector<ArcSpec> arcs(m0);
    for (EdgeId e = 0; e < m0; ++e) {
        Dart fd = 2 * e, rd = 2 * e + 1;
        arcs[e].tail = slot_copy(g.tail(fd), g.rot_index(fd));
        arcs[e].head = slot_copy(g.tail(rd), g.rot_index(rd));
        arcs[e].w = g.weight(fd);
        arcs[e].wrev = g.weight(rd);
    }
    res.orig_edge.resize(m0);
    for (EdgeId e = 0; e < m0; ++e) res.orig_edge[e] = e;
    res.gadget_owner.assign(m0, kNone);
    res.chord_face.assign(m0, kNone);

    std::vector<std::vector<Dart>> rotations(n1);
    for (Vertex v = 0; v < n0; ++v) {
        std::uint32_t d = g.degree(v);
        if (d < 4) {
            rotations[res.rep[v]] = g.rotation_of(v);
            continue;
        }
        // gadget edge t joins copy t-1 to copy t, zero length both ways
        std::vector<EdgeId> gid(d - 1);  // 1-based use
        for (std::uint32_t t = 1; t <= d - 2; ++t) {
            gid[t] = static_cast<EdgeId>(arcs.size());
            arcs.push_back({res.rep[v] + t - 1, res.rep[v] + t, Weight::zero(), Weight::zero()});
            res.orig_edge.push_back(kNone);
            res.gadget_owner.push_back(v);
            res.chord_face.push_back(kNone);
        }
        auto fwd = [&](std::uint32_t t) { return static_cast<Dart>(2 * gid[t]); };
        auto rev = [&](std::uint32_t t) { return static_cast<Dart>(2 * gid[t] + 1); };
        rotations[res.rep[v]] = {g.rot_at(v, 0), g.rot_at(v, 1), fwd(1)};
        for (std::uint32_t t = 1; t <= d - 3; ++t)
            rotations[res.rep[v] + t] = {rev(t), g.rot_at(v, t + 1), fwd(t + 1)};
        rotations[res.rep[v] + d - 2] = {rev(d - 2), g.rot_at(v, d - 1)};
    }

    Dart hole_dart = g.face_dart(hole, 0);  // original dart ids survive expansion
    PlanarGraph g1(n1, std::move(arcs), std::move(rotations), hole_dart, 0, /*simplify=*/false);
    if (g1.face_count() != g.face_count())
        throw std::logic_error("vertex expansion altered the face count");

    // faces of g1 correspond 1:1 to faces of g; read the match off any
    // original dart on the cycle
    std::vector<FaceId> face_back(g1.face_count(), kNone);
    for (FaceId f = 0; f < g1.face_count(); ++f) {
        for (const Dart* it = g1.face_begin(f); it != g1.face_end(f); ++it) {
            if (*it < 2 * m0) {
                face_back[f] = g.face_of(*it);
                break;
            }
        }
        if (face_back[f] == kNone) throw std::logic_error("face lost its original darts");
    }

    if (g.has_coords()) {
        std::vector<std::array<double, 2>> c(n1);
        for (Vertex u = 0; u < n1; ++u) c[u] = g.coord(res.orig_vertex[u]);
        g1.set_coords(std::move(c));
    }

    // ── phase 2: fill every non-hole face with unusable chords ─────────
    ChordPlan plan;
    EdgeId next_edge = g1.edge_count();
    FaceId hole1 = g1.infinite_face();
    for (FaceId f = 0; f < g1.face_count(); ++f)
        if (f != hole1 && g1.face_size(f) >= 4) plan_face_chords(g1, f, next_edge, plan);

    std::vector<EdgeId> chord_src;
    PlanarGraph g2 = plan.arcs.empty() ? std::move(g1) : apply_chord_plan(g1, plan, &chord_src);
    for (std::size_t i = 0; i < chord_src.size(); ++i) {
        res.orig_edge.push_back(kNone);
        res.gadget_owner.push_back(kNone);
        res.chord_face.push_back(face_back[chord_src[i]]);
    }

    res.hole = g2.infinite_face();
    for (FaceId f = 0; f < g2.face_count(); ++f)
        if (f != res.hole && g2.face_size(f) != 3)
            throw std::logic_error("normalization left a non-triangular face");
    for (Vertex u = 0; u < g2.vertex_count(); ++u)
        if (g2.finite_degree(u) > 3)
            throw std::logic_error("normalization left finite degree above 3");

    res.graph = std::move(g2);
    return res;
}

// ────────────────────────────────────────────────────────────────────────
//  Dual
// ────────────────────────────────────────────────────────────────────────

PlanarGraph build_dual(const PlanarGraph& g) {
    const std::uint32_t m = g.edge_count();
    std::vector<ArcSpec> arcs(m);
    for (EdgeId e = 0; e < m; ++e) {
        arcs[e].tail = g.left_face(e);
        arcs[e].head = g.right_face(e);
        arcs[e].w = g.weight(2 * e);
        arcs[e].wrev = g.weight(2 * e + 1);
    }
    // clockwise rotation around a face vertex = reversed boundary cycle
    std::vector<std::vector<Dart>> rotations(g.face_count());
    for (FaceId f = 0; f < g.face_count(); ++f) {
        rotations[f].reserve(g.face_size(f));
        for (std::uint32_t i = g.face_size(f); i-- > 0;) rotations[f].push_back(g.face_dart(f, i));
    }
    return PlanarGraph(g.face_count(), std::move(arcs), std::move(rotations), kNone, 0,
                       /*simplify=*/false);
}

// ────────────────────────────────────────────────────────────────────────
//  Subgraph extraction
// ────────────────────────────────────────────────────────────────────────

Subgraph extract_subgraph(const PlanarGraph& g, const std::vector<char>& keep_edge) {
    if (keep_edge.size() != g.edge_count())
        throw std::invalid_argument("keep_edge size mismatch");
    Subgraph out;
    out.to_sub.assign(g.vertex_count(), kNone);
    out.edge_to_sub.assign(g.edge_count(), kNone);

    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (std::uint32_t i = 0; i < g.degree(v); ++i)
            if (keep_edge[PlanarGraph::edge_of(g.rot_at(v, i))]) {
                out.to_sub[v] = 0;  // marked, numbered below
                break;
            }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (out.to_sub[v] != kNone) {
            out.to_sub[v] = static_cast<Vertex>(out.to_full.size());
            out.to_full.push_back(v);
        }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (keep_edge[e]) {
            out.edge_to_sub[e] = static_cast<EdgeId>(out.edge_to_full.size());
            out.edge_to_full.push_back(e);
        }

    std::vector<ArcSpec> arcs(out.edge_to_full.size());
    for (EdgeId se = 0; se < out.edge_to_full.size(); ++se) {
        EdgeId e = out.edge_to_full[se];
        arcs[se] = {out.to_sub[g.tail(2 * e)], out.to_sub[g.head(2 * e)], g.weight(2 * e),
                    g.weight(2 * e + 1)};
    }
    std::vector<std::vector<Dart>> rotations(out.to_full.size());
    for (Vertex sv = 0; sv < out.to_full.size(); ++sv) {
        Vertex v = out.to_full[sv];
        for (std::uint32_t i = 0; i < g.degree(v); ++i) {
            Dart d = g.rot_at(v, i);
            EdgeId se = out.edge_to_sub[PlanarGraph::edge_of(d)];
            if (se != kNone) rotations[sv].push_back(2 * se + (d & 1));
        }
    }
    out.graph = PlanarGraph(static_cast<std::uint32_t>(out.to_full.size()), std::move(arcs),
                            std::move(rotations), kNone, 0, /*simplify=*/false);
    if (g.has_coords()) {
        std::vector<std::array<double, 2>> c(out.to_full.size());
        for (Vertex sv = 0; sv < out.to_full.size(); ++sv) c[sv] = g.coord(out.to_full[sv]);
        out.graph.set_coords(std::move(c));
    }
    return out;
}

}  // namespace voracle
