#include "voracle/mssp.hpp"

#include <stdexcept>
#include <string>

namespace voracle {

MsspHandle::MsspHandle(const PlanarGraph& g, FaceId hole, MsspOptions opt)
    : g_(&g), hole_(hole), opt_(opt) {
    if (hole >= g.face_count()) throw std::invalid_argument("hole is not a face");
    for (FaceId f = 0; f < g.face_count(); ++f)
        if (f != hole && g.face_size(f) != 3)
            throw std::invalid_argument("graph is not triangulated away from the hole");
    if (opt_.resident_cap == 0) opt_.resident_cap = 1;

    site_index_.assign(g.vertex_count(), kNone);
    edge_index_.assign(g.edge_count(), kNone);
    for (const Dart* it = g.face_begin(hole); it != g.face_end(hole); ++it) {
        Vertex v = g.tail(*it);
        if (site_index_[v] != kNone)
            throw std::invalid_argument("hole cycle repeats vertex " + std::to_string(v));
        if (edge_index_[PlanarGraph::edge_of(*it)] != kNone)
            throw std::invalid_argument("hole cycle repeats an edge");
        site_index_[v] = static_cast<std::uint32_t>(sites_.size());
        edge_index_[PlanarGraph::edge_of(*it)] = site_index_[v];
        sites_.push_back(v);
        hole_edges_.push_back(PlanarGraph::edge_of(*it));
        hole_darts_.push_back(*it);
    }
    cache_.resize(sites_.size());
}

std::shared_ptr<const SiteData> MsspHandle::site_data(std::uint32_t s) const {
    if (s >= sites_.size()) throw std::invalid_argument("unknown site");
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_[s]) return cache_[s];
    auto data = std::make_shared<SiteData>();
    auto r = sssp(*g_, sites_[s]);
    for (Vertex v = 0; v < g_->vertex_count(); ++v)
        if (r.dist[v].is_infinite())
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        " is unreachable from site " + std::to_string(s));
    data->dist = std::move(r.dist);
    data->tree = RootedTree(*g_, sites_[s], std::move(r.parent), hole_darts_[s]);
    data->cotree = Cotree(*g_, data->tree, hole_);
    data->centroid = CentroidTree(*g_, data->tree);
    if (resident_ >= opt_.resident_cap) {
        for (auto& slot : cache_) slot.reset();
        resident_ = 0;
    }
    cache_[s] = std::move(data);
    ++resident_;
    return cache_[s];
}

const SiteData& MsspHandle::touch(std::uint32_t s) const {
    probes_.fetch_add(1, std::memory_order_relaxed);
    // the shared_ptr stays alive in the cache slot; a flush can only be
    // triggered by a later build, never by this lookup
    static thread_local std::shared_ptr<const SiteData> keep;
    keep = site_data(s);
    return *keep;
}

Weight MsspHandle::distance(std::uint32_t s, Vertex v) const { return touch(s).dist[v]; }

Dart MsspHandle::parent_dart(std::uint32_t s, Vertex v) const {
    return touch(s).tree.parent_dart(v);
}

bool MsspHandle::is_ancestor(std::uint32_t s, Vertex a, Vertex b) const {
    return touch(s).tree.is_ancestor(a, b);
}

std::uint32_t MsspHandle::preorder(std::uint32_t s, Vertex v) const {
    return touch(s).tree.euler_in(v);
}

std::uint32_t MsspHandle::cotree_depth(std::uint32_t s, FaceId f) const {
    return touch(s).cotree.depth(f);
}

FaceId MsspHandle::cotree_ancestor(std::uint32_t s, FaceId f, std::uint32_t k) const {
    return touch(s).cotree.ancestor(f, k);
}

EdgeId MsspHandle::cotree_parent_edge(std::uint32_t s, FaceId f) const {
    return touch(s).cotree.parent_edge(f);
}

FaceId MsspHandle::cotree_lca(std::uint32_t s, FaceId a, FaceId b) const {
    return touch(s).cotree.lca(a, b);
}

}  // namespace voracle
