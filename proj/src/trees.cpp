#include "voracle/trees.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace voracle {

// ────────────────────────────────────────────────────────────────────────
//  Dijkstra
// ────────────────────────────────────────────────────────────────────────

SsspResult sssp(const PlanarGraph& g, Vertex source) {
    const std::uint32_t n = g.vertex_count();
    if (source >= n) throw std::invalid_argument("sssp source out of range");
    SsspResult r;
    r.dist.assign(n, Weight::infinity());
    r.parent.assign(n, kNone);
    std::vector<char> done(n, 0);
    using QE = std::pair<Weight, Vertex>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    r.dist[source] = Weight::zero();
    pq.push({Weight::zero(), source});
    while (!pq.empty()) {
        auto [dv, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (std::uint32_t i = 0, deg = g.degree(v); i < deg; ++i) {
            Dart d = g.rot_at(v, i);
            if (!g.usable(d)) continue;
            Vertex w = g.head(d);
            if (done[w]) continue;
            Weight cand = dv + g.weight(d);
            if (cand < r.dist[w]) {
                r.dist[w] = cand;
                r.parent[w] = d;
                pq.push({cand, w});
            }
        }
    }
    return r;
}

std::optional<Vertex> find_tie_vertex(const PlanarGraph& g, const SsspResult& r) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (r.dist[v].is_infinite() || r.parent[v] == kNone) continue;
        std::uint32_t optimal = 0;
        for (std::uint32_t i = 0, deg = g.degree(v); i < deg; ++i) {
            Dart in = PlanarGraph::twin(g.rot_at(v, i));
            if (!g.usable(in)) continue;
            Vertex u = g.tail(in);
            if (r.dist[u].is_infinite()) continue;
            if (r.dist[u] + g.weight(in) == r.dist[v]) ++optimal;
        }
        if (optimal != 1) return v;
    }
    return std::nullopt;
}

// ────────────────────────────────────────────────────────────────────────
//  RootedTree
// ────────────────────────────────────────────────────────────────────────

RootedTree::RootedTree(const PlanarGraph& g, Vertex root, std::vector<Dart> parent,
                       Dart root_start)
    : g_(&g), root_(root), root_start_(root_start), parent_(std::move(parent)) {
    const std::uint32_t n = g.vertex_count();
    if (root >= n || parent_.size() != n) throw std::invalid_argument("bad tree arguments");
    if (parent_[root] != kNone) throw std::invalid_argument("root must have no parent");
    if (root_start != kNone && g.tail(root_start) != root)
        throw std::invalid_argument("root_start dart must leave the root");
    for (Vertex v = 0; v < n; ++v) {
        if (v == root_) continue;
        if (parent_[v] == kNone || g.head(parent_[v]) != v)
            throw std::invalid_argument("parent dart of vertex " + std::to_string(v) +
                                        " is missing or inconsistent");
    }
    depth_.assign(n, 0);
    in_.assign(n, 0);
    out_.assign(n, 0);

    // iterative Euler tour in child order
    std::vector<std::pair<Vertex, std::uint32_t>> stack;
    std::uint32_t clock = 0, seen = 0;
    stack.push_back({root_, 0});
    in_[root_] = clock++;
    ++seen;
    auto child_slot = [&](Vertex v, std::uint32_t k) -> Dart {
        // k-th rotation slot relative to the scan start
        std::uint32_t deg = g_->degree(v);
        std::uint32_t start;
        if (v == root_)
            start = root_start_ == kNone ? 0 : g_->rot_index(root_start_);
        else
            start = g_->rot_index(PlanarGraph::twin(parent_[v])) + 1;
        std::uint32_t i = start + k;
        while (i >= deg) i -= deg;
        return g_->rot_at(v, i);
    };
    while (!stack.empty()) {
        auto& [v, k] = stack.back();
        if (k == g_->degree(v)) {
            out_[v] = clock;
            stack.pop_back();
            continue;
        }
        Dart d = child_slot(v, k);
        ++k;
        if (dart_in_tree(d)) {
            Vertex w = g_->head(d);
            depth_[w] = depth_[v] + 1;
            in_[w] = clock++;
            ++seen;
            stack.push_back({w, 0});
        }
    }
    if (seen != n) throw std::invalid_argument("tree does not span the graph");
}

// ────────────────────────────────────────────────────────────────────────
//  Cotree
// ────────────────────────────────────────────────────────────────────────

Cotree::Cotree(const PlanarGraph& g, const RootedTree& tree, FaceId root_face) {
    const std::uint32_t nf = g.face_count();
    if (root_face >= nf) throw std::invalid_argument("cotree root face out of range");
    root_ = root_face;
    parent_edge_.assign(nf, kNone);
    parent_.assign(nf, kNone);
    depth_.assign(nf, 0);
    std::vector<char> vis(nf, 0);
    std::vector<FaceId> queue{root_face};
    vis[root_face] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        FaceId f = queue[qi];
        for (const Dart* it = g.face_begin(f); it != g.face_end(f); ++it) {
            EdgeId e = PlanarGraph::edge_of(*it);
            if (tree.edge_in_tree(e)) continue;
            FaceId nb = g.face_of(PlanarGraph::twin(*it));
            if (vis[nb]) continue;
            vis[nb] = 1;
            parent_[nb] = f;
            parent_edge_[nb] = e;
            depth_[nb] = depth_[f] + 1;
            queue.push_back(nb);
        }
    }
    if (queue.size() != nf)
        throw std::logic_error("dual of the non-tree edges does not span the faces");

    std::uint32_t levels = 1;
    while ((1u << levels) < nf) ++levels;
    up_.assign(levels, std::vector<FaceId>(nf));
    for (FaceId f = 0; f < nf; ++f) up_[0][f] = parent_[f] == kNone ? f : parent_[f];
    for (std::uint32_t k = 1; k < levels; ++k)
        for (FaceId f = 0; f < nf; ++f) up_[k][f] = up_[k - 1][up_[k - 1][f]];
}

FaceId Cotree::ancestor(FaceId f, std::uint32_t k) const {
    for (std::uint32_t b = 0; k != 0; ++b, k >>= 1)
        if (k & 1) f = up_[b][f];
    return f;
}

FaceId Cotree::lca(FaceId a, FaceId b) const {
    if (depth_[a] < depth_[b]) std::swap(a, b);
    a = ancestor(a, depth_[a] - depth_[b]);
    if (a == b) return a;
    for (std::uint32_t k = static_cast<std::uint32_t>(up_.size()); k-- > 0;) {
        if (up_[k][a] != up_[k][b]) {
            a = up_[k][a];
            b = up_[k][b];
        }
    }
    return parent_[a];
}

// ────────────────────────────────────────────────────────────────────────
//  Fundamental cycle
// ────────────────────────────────────────────────────────────────────────

FundamentalCycle fundamental_cycle(const PlanarGraph& g, const RootedTree& t, const Cotree& c,
                                   EdgeId e) {
    if (!t.edge_in_tree(e)) throw std::invalid_argument("fundamental cycle needs a tree edge");
    Dart down = t.down_dart(e);
    FundamentalCycle fc;
    fc.side[0].start = g.face_of(PlanarGraph::twin(down));
    fc.side[1].start = g.face_of(down);
    fc.meet = c.lca(fc.side[0].start, fc.side[1].start);
    fc.side[0].len = c.depth(fc.side[0].start) - c.depth(fc.meet);
    fc.side[1].len = c.depth(fc.side[1].start) - c.depth(fc.meet);
    return fc;
}

EdgeId path_edge(const Cotree& c, const CyclePath& p, std::uint32_t i) {
    if (i >= p.len) throw std::out_of_range("cycle path index");
    return c.parent_edge(c.ancestor(p.start, i));
}

FaceId path_face(const Cotree& c, const CyclePath& p, std::uint32_t i) {
    if (i > p.len) throw std::out_of_range("cycle path index");
    return c.ancestor(p.start, i);
}

// ────────────────────────────────────────────────────────────────────────
//  CentroidTree
// ────────────────────────────────────────────────────────────────────────

namespace {

struct CentroidBuilder {
    const PlanarGraph& g;
    const RootedTree& t;
    std::vector<CentroidTree::Node>& nodes;
    std::vector<std::uint32_t> member;  // component membership stamp
    std::vector<std::uint32_t> vis;     // per-dfs visit stamp
    std::vector<std::uint32_t> slot;    // dfs order position, valid under vis stamp
    std::uint32_t member_epoch = 0;
    std::uint32_t vis_epoch = 0;
    std::uint32_t max_depth = 0;

    CentroidBuilder(const PlanarGraph& g_, const RootedTree& t_,
                    std::vector<CentroidTree::Node>& nodes_)
        : g(g_),
          t(t_),
          nodes(nodes_),
          member(g_.vertex_count(), 0),
          vis(g_.vertex_count(), 0),
          slot(g_.vertex_count(), 0) {}

    // tree neighbors of v, in rotation order
    template <class F>
    void neighbors(Vertex v, F&& f) const {
        for (std::uint32_t i = 0, deg = g.degree(v); i < deg; ++i) {
            Dart d = g.rot_at(v, i);
            if (t.dart_in_tree(d) || t.dart_in_tree(PlanarGraph::twin(d)))
                f(PlanarGraph::edge_of(d), g.head(d));
        }
    }

    // vertices reachable from v inside the current component without crossing `cut`
    std::vector<Vertex> flood(Vertex v, EdgeId cut) {
        ++vis_epoch;
        std::vector<Vertex> out{v};
        vis[v] = vis_epoch;
        for (std::size_t i = 0; i < out.size(); ++i) {
            neighbors(out[i], [&](EdgeId e, Vertex w) {
                if (e == cut || member[w] != member_epoch || vis[w] == vis_epoch) return;
                vis[w] = vis_epoch;
                out.push_back(w);
            });
        }
        return out;
    }

    std::int32_t build(const std::vector<Vertex>& comp, std::uint32_t depth) {
        const std::uint32_t k = static_cast<std::uint32_t>(comp.size());
        if (k < 2) return -1;
        max_depth = std::max(max_depth, depth);
        ++member_epoch;
        for (Vertex v : comp) member[v] = member_epoch;
        const std::uint32_t comp_epoch = member_epoch;

        // dfs order from comp[0], then subtree sizes by reverse accumulation
        std::vector<Vertex> order;
        std::vector<std::uint32_t> par_slot(k, kNone);
        std::vector<EdgeId> par_edge(k, kNone);
        std::vector<std::uint32_t> sz(k, 1);
        order.reserve(k);
        ++vis_epoch;
        vis[comp[0]] = vis_epoch;
        slot[comp[0]] = 0;
        order.push_back(comp[0]);
        std::vector<Vertex> st{comp[0]};
        while (!st.empty()) {
            Vertex v = st.back();
            st.pop_back();
            neighbors(v, [&](EdgeId e, Vertex w) {
                if (member[w] != comp_epoch || vis[w] == vis_epoch) return;
                vis[w] = vis_epoch;
                std::uint32_t s = static_cast<std::uint32_t>(order.size());
                slot[w] = s;
                par_slot[s] = slot[v];
                par_edge[s] = e;
                order.push_back(w);
                st.push_back(w);
            });
        }
        if (order.size() != k) throw std::logic_error("centroid component is not connected");
        for (std::uint32_t i = k; i-- > 1;) sz[par_slot[i]] += sz[i];

        // split edge minimizing the larger side, ties to the smaller edge id
        std::uint32_t best_score = kNone;
        EdgeId best_edge = kNone;
        for (std::uint32_t i = 1; i < k; ++i) {
            std::uint32_t score = std::max(sz[i], k - sz[i]);
            if (score < best_score || (score == best_score && par_edge[i] < best_edge)) {
                best_score = score;
                best_edge = par_edge[i];
            }
        }
        if (3ull * best_score > 2ull * k + 1)
            throw std::logic_error("centroid split exceeds the balance bound");

        Vertex below_end = t.deeper_end(best_edge);
        Vertex above_end = g.tail(t.down_dart(best_edge));
        std::vector<Vertex> below_comp = flood(below_end, best_edge);
        std::vector<Vertex> above_comp = flood(above_end, best_edge);
        if (below_comp.size() + above_comp.size() != k)
            throw std::logic_error("centroid split lost vertices");

        std::int32_t id = static_cast<std::int32_t>(nodes.size());
        nodes.push_back({best_edge, -1, -1});
        std::int32_t a = build(above_comp, depth + 1);
        std::int32_t b = build(below_comp, depth + 1);
        nodes[static_cast<std::size_t>(id)].above = a;
        nodes[static_cast<std::size_t>(id)].below = b;
        return id;
    }
};

}  // namespace

CentroidTree::CentroidTree(const PlanarGraph& g, const RootedTree& tree) {
    const std::uint32_t n = g.vertex_count();
    for (Vertex v = 0; v < n; ++v) {
        std::uint32_t tdeg = 0;
        for (std::uint32_t i = 0, deg = g.degree(v); i < deg; ++i) {
            Dart d = g.rot_at(v, i);
            if (tree.dart_in_tree(d) || tree.dart_in_tree(PlanarGraph::twin(d))) ++tdeg;
        }
        if (tdeg > 3) throw std::invalid_argument("centroid decomposition needs tree degree <= 3");
    }
    CentroidBuilder b(g, tree, nodes_);
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    root_ = b.build(all, 1);
    max_depth_ = b.max_depth;
}

}  // namespace voracle
