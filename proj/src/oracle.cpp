#include "voracle/oracle.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <queue>
#include <stdexcept>

#include "json.hpp"
#include "voracle/graph_io.hpp"
#include "voracle/trees.hpp"
#include "voracle/vd_builder.hpp"

namespace voracle {

namespace {

constexpr char kMagic[4] = {'V', 'O', 'R', 'A'};
constexpr std::uint32_t kVersion = 1;

void put32(std::ostream& out, std::uint32_t x) {
    char b[4] = {static_cast<char>(x), static_cast<char>(x >> 8), static_cast<char>(x >> 16),
                 static_cast<char>(x >> 24)};
    out.write(b, 4);
}

void put64(std::ostream& out, std::uint64_t x) {
    put32(out, static_cast<std::uint32_t>(x));
    put32(out, static_cast<std::uint32_t>(x >> 32));
}

std::uint32_t get32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw std::runtime_error("weight table file is truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get64(std::istream& in) {
    std::uint64_t lo = get32(in);
    return lo | (static_cast<std::uint64_t>(get32(in)) << 32);
}

void put_weight(std::ostream& out, const Weight& w) {
    put64(out, w.length);
    put64(out, w.tie);
}

Weight get_weight(std::istream& in) {
    Weight w;
    w.length = get64(in);
    w.tie = get64(in);
    return w;
}

std::vector<Weight> dijkstra_rows(const Oracle::RegionData& rd, std::uint32_t nloc,
                                  std::uint32_t src) {
    std::vector<Weight> dist(nloc, Weight::infinity());
    using Entry = std::pair<Weight, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    dist[src] = Weight::zero();
    heap.push({Weight::zero(), src});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (dist[v] != d) continue;
        for (std::uint32_t i = rd.adj_off[v]; i < rd.adj_off[v + 1]; ++i) {
            const auto& [to, w] = rd.adj[i];
            Weight nd = d + w;
            if (nd < dist[to]) {
                dist[to] = nd;
                heap.push({nd, to});
            }
        }
    }
    return dist;
}

VoronoiDual parse_diagram(const nlohmann::json& j) {
    VoronoiDual vd;
    for (const auto& jn : j.at("nodes")) {
        VoronoiDual::Node n;
        n.face = jn.at("face").get<std::uint32_t>();
        n.leaf = jn.at("leaf").get<bool>();
        auto vs = jn.at("verts").get<std::vector<std::uint32_t>>();
        auto ss = jn.at("sites").get<std::vector<std::uint32_t>>();
        auto nb = jn.at("nbr").get<std::vector<std::int32_t>>();
        if (vs.size() != (n.leaf ? 2u : 3u) || ss.size() != vs.size() ||
            nb.size() != (n.leaf ? 1u : 3u))
            throw std::runtime_error("stored diagram node has the wrong arity");
        std::copy(vs.begin(), vs.end(), n.verts.begin());
        std::copy(ss.begin(), ss.end(), n.sites.begin());
        std::copy(nb.begin(), nb.end(), n.nbr.begin());
        vd.nodes.push_back(n);
    }
    for (const auto& je : j.at("edges")) {
        VoronoiDual::Edge e;
        e.a = je.at("a").get<std::int32_t>();
        e.b = je.at("b").get<std::int32_t>();
        auto ss = je.at("sites").get<std::vector<std::uint32_t>>();
        if (ss.size() != 2) throw std::runtime_error("stored diagram edge has the wrong arity");
        e.site_s = ss[0];
        e.site_t = ss[1];
        e.fine = je.at("fine").get<std::vector<EdgeId>>();
        vd.edges.push_back(std::move(e));
    }
    vd.leaves = j.at("leaves").get<std::vector<std::int32_t>>();
    return vd;
}

std::string diagram_name(std::uint32_t region, std::uint32_t site) {
    return "r" + std::to_string(region) + "_q" + std::to_string(site) + ".json";
}

}  // namespace

// ── shared assembly ──────────────────────────────────────────────────

void Oracle::finish_regions() {
    const std::uint32_t n = g_.vertex_count();
    local_of_.assign(div_.regions.size(), {});
    data_.clear();
    for (std::uint32_t i = 0; i < div_.regions.size(); ++i) {
        const Region& reg = div_.regions[i];
        local_of_[i].assign(n, kNone);
        for (std::uint32_t j = 0; j < reg.vertices.size(); ++j)
            local_of_[i][reg.vertices[j]] = j;

        auto rd = std::make_unique<RegionData>();
        if (!reg.boundary.empty()) {
            rd->comp = build_complement(g_, reg);
            if (rd->comp.sites != reg.boundary)
                throw std::invalid_argument(
                    "stored boundary order does not match the complement walk");
            const std::uint32_t k = static_cast<std::uint32_t>(reg.boundary.size());
            MsspOptions opt;
            opt.resident_cap = std::max<std::uint32_t>(64, k + 4);
            rd->handle = std::make_unique<MsspHandle>(rd->comp.tri, rd->comp.hole, opt);
            for (std::uint32_t s = 0; s < k; ++s)
                if (rd->comp.sub.to_full[rd->handle->site(s)] != reg.boundary[s])
                    throw std::logic_error("complement sites drifted from the region boundary");
        }
        data_.push_back(std::move(rd));
    }
}

// Region arcs plus the boundary clique, flattened per region.
static void assemble_aug(const PlanarGraph& g, const Region& reg,
                         const std::vector<std::uint32_t>& local, Oracle::RegionData& rd) {
    const std::uint32_t nloc = static_cast<std::uint32_t>(reg.vertices.size());
    std::vector<std::vector<std::pair<std::uint32_t, Weight>>> tmp(nloc);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        std::uint32_t la = local[g.tail(2 * e)], lb = local[g.head(2 * e)];
        if (la == kNone || lb == kNone) continue;
        if (g.usable(2 * e)) tmp[la].push_back({lb, g.weight(2 * e)});
        if (g.usable(2 * e + 1)) tmp[lb].push_back({la, g.weight(2 * e + 1)});
    }
    const std::uint32_t k = static_cast<std::uint32_t>(reg.boundary.size());
    for (std::uint32_t p = 0; p < k; ++p)
        for (std::uint32_t q = 0; q < k; ++q) {
            if (p == q) continue;
            const Weight& w = rd.boundary_table[p * k + q];
            if (!w.is_infinite())
                tmp[local[reg.boundary[p]]].push_back({local[reg.boundary[q]], w});
        }
    rd.adj_off.assign(nloc + 1, 0);
    for (std::uint32_t v = 0; v < nloc; ++v)
        rd.adj_off[v + 1] = rd.adj_off[v] + static_cast<std::uint32_t>(tmp[v].size());
    rd.adj.clear();
    rd.adj.reserve(rd.adj_off[nloc]);
    for (std::uint32_t v = 0; v < nloc; ++v)
        rd.adj.insert(rd.adj.end(), tmp[v].begin(), tmp[v].end());
}

// ── queries ──────────────────────────────────────────────────────────

const std::vector<Weight>& Oracle::row_from(std::uint32_t region, Vertex u) const {
    const RegionData& rd = *data_[region];
    std::lock_guard<std::mutex> lock(rd.mu);
    auto it = rd.rows.find(u);
    if (it != rd.rows.end()) return it->second;
    std::uint32_t nloc = static_cast<std::uint32_t>(div_.regions[region].vertices.size());
    std::vector<Weight> row = dijkstra_rows(rd, nloc, local_of_[region][u]);
    return rd.rows.emplace(u, std::move(row)).first->second;
}

Weight Oracle::query(Vertex u, Vertex v) const {
    if (u >= g_.vertex_count() || v >= g_.vertex_count())
        throw std::invalid_argument("query vertex out of range");
    if (u == v) return Weight::zero();
    const std::uint32_t ru = div_.region_of[u];
    const Region& reg = div_.regions[ru];
    const std::vector<Weight>& row = row_from(ru, u);
    if (local_of_[ru][v] != kNone) return row[local_of_[ru][v]];

    const RegionData& rd = *data_[ru];
    Vertex vt = rd.comp.sub.to_sub[v];
    if (vt == kNone) throw std::logic_error("query target missing from the complement");
    Weight best = Weight::infinity();
    for (std::uint32_t s = 0; s < reg.boundary.size(); ++s) {
        const Weight& exit = row[local_of_[ru][reg.boundary[s]]];
        if (exit.is_infinite()) continue;
        const BoundaryData& bd = rd.per_site[s];
        Weight via = bd.lone != kNone
                         ? bd.omega.omega[bd.lone] + rd.handle->distance(bd.lone, vt)
                         : point_locate(bd.index, *rd.handle, bd.omega, vt).dist;
        Weight cand = exit + via;
        if (cand < best) best = cand;
    }
    return best;
}

const Weight& Oracle::boundary_distance(std::uint32_t region, std::uint32_t p,
                                        std::uint32_t q) const {
    const Region& reg = div_.regions.at(region);
    const std::uint32_t k = static_cast<std::uint32_t>(reg.boundary.size());
    if (p >= k || q >= k) throw std::invalid_argument("boundary index out of range");
    return data_[region]->boundary_table[p * k + q];
}

std::uint64_t Oracle::probe_count() const {
    std::uint64_t total = 0;
    for (const auto& rd : data_)
        if (rd->handle) total += rd->handle->probe_count();
    return total;
}

// ── construction ─────────────────────────────────────────────────────

Oracle build_oracle(const PlanarGraph& g, std::uint32_t r) {
    Oracle o;
    o.g_ = g;
    o.div_ = build_r_division(o.g_, r);
    o.finish_regions();

    for (std::uint32_t i = 0; i < o.div_.regions.size(); ++i) {
        const Region& reg = o.div_.regions[i];
        Oracle::RegionData& rd = *o.data_[i];
        const std::uint32_t k = static_cast<std::uint32_t>(reg.boundary.size());
        if (k > 0) {
            rd.boundary_table.resize(static_cast<std::size_t>(k) * k);
            for (std::uint32_t p = 0; p < k; ++p)
                for (std::uint32_t q = 0; q < k; ++q)
                    rd.boundary_table[p * k + q] =
                        rd.handle->distance(p, rd.comp.sub.to_sub[reg.boundary[q]]);

            rd.per_site.resize(k);
            for (std::uint32_t q = 0; q < k; ++q) {
                SsspResult from_q = sssp(o.g_, reg.boundary[q]);
                Oracle::BoundaryData bd;
                bd.omega.omega.reserve(k);
                for (std::uint32_t s = 0; s < k; ++s)
                    bd.omega.omega.push_back(from_q.dist[reg.boundary[s]]);
                VoronoiDual vd = build_vdstar_fast(*rd.handle, bd.omega);
                bool empty = vd.nodes.empty();
                bd.index = build_pl_index(*rd.handle, bd.omega, std::move(vd));
                if (empty) bd.lone = nonempty_cells(*rd.handle, bd.omega).at(0);
                rd.per_site[q] = std::move(bd);
            }
        }
        assemble_aug(o.g_, reg, o.local_of_[i], rd);
    }
    return o;
}

// ── persistence ──────────────────────────────────────────────────────

void save_oracle(const Oracle& oracle, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "diagrams");
    save_graph(oracle.graph(), (fs::path(dir) / "graph.pg").string());

    nlohmann::json j;
    j["version"] = kVersion;
    j["r"] = oracle.division().r;
    j["vertex_count"] = oracle.graph().vertex_count();
    j["regions"] = nlohmann::json::array();
    for (const Region& reg : oracle.division().regions)
        j["regions"].push_back({{"vertices", reg.vertices}, {"boundary", reg.boundary}});
    {
        std::ofstream out(fs::path(dir) / "regions.json");
        if (!out) throw std::runtime_error("cannot write " + dir + "/regions.json");
        out << j.dump(2) << '\n';
    }

    std::ofstream wb(fs::path(dir) / "weights.bin", std::ios::binary);
    if (!wb) throw std::runtime_error("cannot write " + dir + "/weights.bin");
    wb.write(kMagic, 4);
    put32(wb, kVersion);
    put32(wb, oracle.region_count());
    for (std::uint32_t i = 0; i < oracle.region_count(); ++i) {
        const Oracle::RegionData& rd = oracle.region_data(i);
        const std::uint32_t k =
            static_cast<std::uint32_t>(oracle.division().regions[i].boundary.size());
        put32(wb, k);
        for (const Weight& w : rd.boundary_table) put_weight(wb, w);
        for (const Oracle::BoundaryData& bd : rd.per_site)
            for (const Weight& w : bd.omega.omega) put_weight(wb, w);
    }
    wb.close();

    for (std::uint32_t i = 0; i < oracle.region_count(); ++i) {
        const Oracle::RegionData& rd = oracle.region_data(i);
        for (std::uint32_t q = 0; q < rd.per_site.size(); ++q) {
            std::ofstream out(fs::path(dir) / "diagrams" / diagram_name(i, q));
            if (!out) throw std::runtime_error("cannot write a diagram file under " + dir);
            out << rd.per_site[q].index.diagram().to_json() << '\n';
        }
    }
}

Oracle load_oracle(const std::string& dir) {
    namespace fs = std::filesystem;
    Oracle o;
    o.g_ = load_graph((fs::path(dir) / "graph.pg").string());

    nlohmann::json j;
    {
        std::ifstream in(fs::path(dir) / "regions.json");
        if (!in) throw std::runtime_error("cannot read " + dir + "/regions.json");
        in >> j;
    }
    if (j.at("version").get<std::uint32_t>() != kVersion)
        throw std::runtime_error("unsupported oracle directory version");
    if (j.at("vertex_count").get<std::uint32_t>() != o.g_.vertex_count())
        throw std::runtime_error("stored region lists do not fit the stored graph");
    o.div_.r = j.at("r").get<std::uint32_t>();
    o.div_.region_of.assign(o.g_.vertex_count(), kNone);
    for (const auto& jr : j.at("regions")) {
        Region reg;
        reg.vertices = jr.at("vertices").get<std::vector<Vertex>>();
        reg.boundary = jr.at("boundary").get<std::vector<Vertex>>();
        std::vector<char> rim(o.g_.vertex_count(), 0);
        for (Vertex v : reg.boundary) {
            if (v >= o.g_.vertex_count())
                throw std::runtime_error("stored region boundary leaves the graph");
            rim[v] = 1;
        }
        for (Vertex v : reg.vertices) {
            if (v >= o.g_.vertex_count())
                throw std::runtime_error("stored region lists a vertex outside the graph");
            if (!rim[v]) reg.interior.push_back(v);
        }
        o.div_.regions.push_back(std::move(reg));
    }
    // same routing preference as a fresh build: enclosing region first
    for (std::uint32_t i = 0; i < o.div_.regions.size(); ++i)
        for (Vertex v : o.div_.regions[i].interior)
            if (o.div_.region_of[v] == kNone) o.div_.region_of[v] = i;
    for (std::uint32_t i = 0; i < o.div_.regions.size(); ++i)
        for (Vertex v : o.div_.regions[i].boundary)
            if (o.div_.region_of[v] == kNone) o.div_.region_of[v] = i;
    for (std::uint32_t v = 0; v < o.g_.vertex_count(); ++v)
        if (o.div_.region_of[v] == kNone)
            throw std::runtime_error("stored regions do not cover the graph");

    o.finish_regions();

    std::ifstream wb(fs::path(dir) / "weights.bin", std::ios::binary);
    if (!wb) throw std::runtime_error("cannot read " + dir + "/weights.bin");
    char magic[4];
    if (!wb.read(magic, 4) || !std::equal(magic, magic + 4, kMagic))
        throw std::runtime_error("weight table file has the wrong magic");
    if (get32(wb) != kVersion) throw std::runtime_error("unsupported weight table version");
    if (get32(wb) != o.div_.regions.size())
        throw std::runtime_error("weight table region count mismatch");
    for (std::uint32_t i = 0; i < o.div_.regions.size(); ++i) {
        const Region& reg = o.div_.regions[i];
        Oracle::RegionData& rd = *o.data_[i];
        const std::uint32_t k = static_cast<std::uint32_t>(reg.boundary.size());
        if (get32(wb) != k) throw std::runtime_error("weight table boundary count mismatch");
        rd.boundary_table.resize(static_cast<std::size_t>(k) * k);
        for (Weight& w : rd.boundary_table) w = get_weight(wb);
        rd.per_site.resize(k);
        for (std::uint32_t q = 0; q < k; ++q) {
            rd.per_site[q].omega.omega.resize(k);
            for (Weight& w : rd.per_site[q].omega.omega) w = get_weight(wb);
        }
    }

    for (std::uint32_t i = 0; i < o.div_.regions.size(); ++i) {
        const Region& reg = o.div_.regions[i];
        Oracle::RegionData& rd = *o.data_[i];
        for (std::uint32_t q = 0; q < reg.boundary.size(); ++q) {
            nlohmann::json dj;
            std::ifstream in(fs::path(dir) / "diagrams" / diagram_name(i, q));
            if (!in) throw std::runtime_error("missing diagram file under " + dir);
            in >> dj;
            VoronoiDual vd = parse_diagram(dj);
            Oracle::BoundaryData& bd = rd.per_site[q];
            bool empty = vd.nodes.empty();
            bd.index = build_pl_index(*rd.handle, bd.omega, std::move(vd));
            if (empty) bd.lone = nonempty_cells(*rd.handle, bd.omega).at(0);
        }
        assemble_aug(o.g_, reg, o.local_of_[i], rd);
    }
    return o;
}

}  // namespace voracle
