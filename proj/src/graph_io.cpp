#include "voracle/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace voracle {

namespace {

[[noreturn]] void fail_line(std::size_t ln, const std::string& what) {
    throw std::runtime_error("graph file line " + std::to_string(ln) + ": " + what);
}

std::uint64_t parse_u64(const std::string& tok, std::size_t ln, const char* what) {
    if (tok.empty() || tok[0] == '-' || tok[0] == '+')
        fail_line(ln, std::string(what) + " must be a nonnegative integer, got '" + tok + "'");
    std::size_t used = 0;
    std::uint64_t v;
    try {
        v = std::stoull(tok, &used);
    } catch (const std::exception&) {
        fail_line(ln, std::string(what) + " is not a valid integer: '" + tok + "'");
    }
    if (used != tok.size()) fail_line(ln, std::string(what) + " has trailing junk: '" + tok + "'");
    return v;
}

Weight parse_len(const std::string& tok, std::size_t ln) {
    if (tok == "inf") return Weight::infinity();
    std::uint64_t v = parse_u64(tok, ln, "length");
    if (v >= Weight::kInfLength) fail_line(ln, "length too large");
    return Weight{v, 0};
}

struct RawGraph {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    Dart hole_dart = kNone;
    std::uint64_t seed = 0;
    std::vector<ArcSpec> arcs;
    std::vector<std::vector<Dart>> rotations;  // empty when absent
    bool any_rot = false;
    std::vector<std::array<double, 2>> coords;
    std::vector<char> has_coord;
};

PlanarGraph finish(RawGraph&& r) {
    if (r.arcs.size() != r.m)
        throw std::runtime_error("graph file declares " + std::to_string(r.m) + " arcs but has " +
                                 std::to_string(r.arcs.size()));
    bool all_coords = !r.has_coord.empty();
    for (std::uint32_t v = 0; v < r.n && all_coords; ++v)
        if (!r.has_coord[v]) all_coords = false;
    if (r.any_rot) {
        PlanarGraph g(r.n, std::move(r.arcs), std::move(r.rotations), r.hole_dart, r.seed);
        if (all_coords) g.set_coords(std::move(r.coords));
        return g;
    }
    if (!all_coords)
        throw std::runtime_error(
            "graph file needs either rot lines or coordinates for every vertex");
    return PlanarGraph::from_coords(r.n, std::move(r.arcs), std::move(r.coords), r.hole_dart,
                                    r.seed);
}

}  // namespace

PlanarGraph parse_graph_text(std::istream& in) {
    RawGraph r;
    bool header = false;
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string kw;
        if (!(ss >> kw)) continue;
        if (kw == "pg") {
            if (header) fail_line(ln, "duplicate pg header");
            header = true;
            std::string n, m, hole, seed;
            if (!(ss >> n >> m >> hole >> seed)) fail_line(ln, "pg needs n m hole-dart seed");
            r.n = static_cast<std::uint32_t>(parse_u64(n, ln, "vertex count"));
            r.m = static_cast<std::uint32_t>(parse_u64(m, ln, "arc count"));
            r.hole_dart = hole == "-1"
                              ? kNone
                              : static_cast<Dart>(parse_u64(hole, ln, "hole dart"));
            r.seed = parse_u64(seed, ln, "perturbation seed");
            r.rotations.resize(r.n);
            r.coords.resize(r.n);
            r.has_coord.assign(r.n, 0);
            continue;
        }
        if (!header) fail_line(ln, "pg header must come first");
        if (kw == "arc") {
            std::string id, tail, head, len;
            if (!(ss >> id >> tail >> head >> len)) fail_line(ln, "arc needs id tail head length");
            if (parse_u64(id, ln, "arc id") != r.arcs.size())
                fail_line(ln, "arc ids must be sequential from 0");
            ArcSpec a;
            a.tail = static_cast<Vertex>(parse_u64(tail, ln, "tail"));
            a.head = static_cast<Vertex>(parse_u64(head, ln, "head"));
            a.w = parse_len(len, ln);
            std::string rev;
            a.wrev = (ss >> rev) ? parse_len(rev, ln) : a.w;
            r.arcs.push_back(a);
        } else if (kw == "rot") {
            std::string v;
            if (!(ss >> v)) fail_line(ln, "rot needs a vertex");
            std::uint32_t vid = static_cast<std::uint32_t>(parse_u64(v, ln, "vertex"));
            if (vid >= r.n) fail_line(ln, "rot vertex out of range");
            if (!r.rotations[vid].empty()) fail_line(ln, "duplicate rot line");
            r.any_rot = true;
            std::string d;
            while (ss >> d)
                r.rotations[vid].push_back(static_cast<Dart>(parse_u64(d, ln, "dart")));
        } else if (kw == "coord") {
            std::string v;
            double x, y;
            if (!(ss >> v >> x >> y)) fail_line(ln, "coord needs vertex x y");
            std::uint32_t vid = static_cast<std::uint32_t>(parse_u64(v, ln, "vertex"));
            if (vid >= r.n) fail_line(ln, "coord vertex out of range");
            r.coords[vid] = {x, y};
            r.has_coord[vid] = 1;
        } else {
            fail_line(ln, "unknown keyword '" + kw + "'");
        }
    }
    if (!header) throw std::runtime_error("graph file has no pg header");
    return finish(std::move(r));
}

void write_graph_text(const PlanarGraph& g, std::ostream& out) {
    Dart hole = g.infinite_face() == kNone ? kNone : g.face_dart(g.infinite_face(), 0);
    out << "pg " << g.vertex_count() << ' ' << g.edge_count() << ' ';
    if (hole == kNone)
        out << -1;
    else
        out << hole;
    out << ' ' << g.perturb_seed() << '\n';
    auto put_len = [&](const Weight& w) {
        if (w.is_infinite())
            out << "inf";
        else
            out << w.length;
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out << "arc " << e << ' ' << g.tail(2 * e) << ' ' << g.head(2 * e) << ' ';
        put_len(g.weight(2 * e));
        if (g.weight(2 * e).length != g.weight(2 * e + 1).length) {
            out << ' ';
            put_len(g.weight(2 * e + 1));
        }
        out << '\n';
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out << "rot " << v;
        for (std::uint32_t i = 0; i < g.degree(v); ++i) out << ' ' << g.rot_at(v, i);
        out << '\n';
    }
    if (g.has_coords()) {
        out << std::setprecision(17);
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            out << "coord " << v << ' ' << g.coord(v)[0] << ' ' << g.coord(v)[1] << '\n';
    }
}

PlanarGraph parse_graph_json(std::istream& in) {
    nlohmann::json j;
    in >> j;
    RawGraph r;
    r.n = j.at("n").get<std::uint32_t>();
    auto hd = j.at("hole_dart");
    r.hole_dart = hd.is_number_integer() && hd.get<std::int64_t>() < 0
                      ? kNone
                      : hd.get<Dart>();
    r.seed = j.at("perturb_seed").get<std::uint64_t>();
    auto parse_jlen = [](const nlohmann::json& v) -> Weight {
        if (v.is_string()) {
            if (v.get<std::string>() != "inf")
                throw std::runtime_error("graph json: bad length token");
            return Weight::infinity();
        }
        std::uint64_t x = v.get<std::uint64_t>();
        if (x >= Weight::kInfLength) throw std::runtime_error("graph json: length too large");
        return Weight{x, 0};
    };
    for (const auto& a : j.at("arcs")) {
        if (!a.is_array() || (a.size() != 3 && a.size() != 4))
            throw std::runtime_error("graph json: arc entries need 3 or 4 fields");
        ArcSpec s;
        s.tail = a[0].get<Vertex>();
        s.head = a[1].get<Vertex>();
        s.w = parse_jlen(a[2]);
        s.wrev = a.size() == 4 ? parse_jlen(a[3]) : s.w;
        r.arcs.push_back(s);
    }
    r.m = static_cast<std::uint32_t>(r.arcs.size());
    r.rotations.resize(r.n);
    if (j.contains("rotations") && !j.at("rotations").empty()) {
        r.any_rot = true;
        auto& rots = j.at("rotations");
        if (rots.size() != r.n) throw std::runtime_error("graph json: rotations size mismatch");
        for (std::uint32_t v = 0; v < r.n; ++v)
            for (const auto& d : rots[v]) r.rotations[v].push_back(d.get<Dart>());
    }
    r.coords.resize(r.n);
    r.has_coord.assign(r.n, 0);
    if (j.contains("coords")) {
        auto& cs = j.at("coords");
        if (cs.size() != r.n) throw std::runtime_error("graph json: coords size mismatch");
        for (std::uint32_t v = 0; v < r.n; ++v) {
            r.coords[v] = {cs[v][0].get<double>(), cs[v][1].get<double>()};
            r.has_coord[v] = 1;
        }
    }
    return finish(std::move(r));
}

void write_graph_json(const PlanarGraph& g, std::ostream& out) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    Dart hole = g.infinite_face() == kNone ? kNone : g.face_dart(g.infinite_face(), 0);
    if (hole == kNone)
        j["hole_dart"] = -1;
    else
        j["hole_dart"] = hole;
    j["perturb_seed"] = g.perturb_seed();
    auto jlen = [](const Weight& w) -> nlohmann::json {
        if (w.is_infinite()) return "inf";
        return w.length;
    };
    auto arcs = nlohmann::json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        arcs.push_back({g.tail(2 * e), g.head(2 * e), jlen(g.weight(2 * e)),
                        jlen(g.weight(2 * e + 1))});
    j["arcs"] = std::move(arcs);
    auto rots = nlohmann::json::array();
    for (Vertex v = 0; v < g.vertex_count(); ++v) rots.push_back(g.rotation_of(v));
    j["rotations"] = std::move(rots);
    if (g.has_coords()) {
        auto cs = nlohmann::json::array();
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            cs.push_back({g.coord(v)[0], g.coord(v)[1]});
        j["coords"] = std::move(cs);
    }
    out << j.dump(1) << '\n';
}

namespace {
bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}
}  // namespace

PlanarGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return has_suffix(path, ".json") ? parse_graph_json(in) : parse_graph_text(in);
}

void save_graph(const PlanarGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    if (has_suffix(path, ".json"))
        write_graph_json(g, out);
    else
        write_graph_text(g, out);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace voracle
