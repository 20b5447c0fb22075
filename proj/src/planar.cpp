#include "mislat/planar.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/chrobak_payne_drawing.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>
#include <boost/graph/planar_canonical_ordering.hpp>
#include <boost/graph/planar_face_traversal.hpp>
#include <boost/property_map/property_map.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "mislat/errors.hpp"

namespace mislat {

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::no_property,
                          boost::property<boost::edge_index_t, int>>;
using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph to_boost(const Graph& g) {
    BoostGraph bg(g.n);
    for (auto [u, v] : g.edges) boost::add_edge(u, v, bg);
    return bg;
}

void reindex_edges(BoostGraph& bg) {
    auto index = boost::get(boost::edge_index, bg);
    int next = 0;
    for (auto [ei, eend] = boost::edges(bg); ei != eend; ++ei)
        boost::put(index, *ei, next++);
}

struct FaceCollector : public boost::planar_face_traversal_visitor {
    std::vector<std::vector<int>>* faces;
    std::vector<int> current;
    void begin_face() { current.clear(); }
    void next_vertex(BoostGraph::vertex_descriptor v) {
        current.push_back(static_cast<int>(v));
    }
    void end_face() { faces->push_back(current); }
};

}  // namespace

PlanarCheck is_planar(const Graph& g) {
    validate(g);
    PlanarCheck out;
    if (g.n == 0) {
        out.planar = true;
        out.embedding = PlanarEmbedding{};
        return out;
    }
    BoostGraph bg = to_boost(g);
    reindex_edges(bg);
    std::vector<std::vector<EdgeDesc>> embedding(g.n);
    out.planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding = &embedding[0]);
    if (!out.planar) return out;

    PlanarEmbedding pe;
    pe.rotation.resize(g.n);
    for (int v = 0; v < g.n; v++)
        for (const auto& e : embedding[v]) {
            int s = static_cast<int>(boost::source(e, bg));
            int t = static_cast<int>(boost::target(e, bg));
            pe.rotation[v].push_back(s == v ? t : s);
        }
    FaceCollector visitor;
    visitor.faces = &pe.faces;
    boost::planar_face_traversal(bg, &embedding[0], visitor);
    out.embedding = std::move(pe);
    return out;
}

namespace {

using EmbeddingStorage = std::vector<std::vector<EdgeDesc>>;
using EmbeddingMap =
    boost::iterator_property_map<EmbeddingStorage::iterator,
                                 boost::property_map<BoostGraph, boost::vertex_index_t>::type>;

// Copy of the input augmented to maximal planar, with a planar embedding of
// the augmented graph and its canonical vertex ordering. Augmentation only
// adds edges, so vertex ids carry over unchanged.
struct MaximalPlanar {
    BoostGraph bg;
    EmbeddingStorage embedding;
    std::vector<BoostGraph::vertex_descriptor> ordering;

    EmbeddingMap emb() {
        return EmbeddingMap(embedding.begin(), boost::get(boost::vertex_index, bg));
    }
};

MaximalPlanar augment_maximal(const Graph& g) {
    MaximalPlanar mp;
    mp.bg = to_boost(g);
    reindex_edges(mp.bg);
    mp.embedding.resize(boost::num_vertices(mp.bg));
    boost::make_connected(mp.bg);
    reindex_edges(mp.bg);
    boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = mp.bg,
        boost::boyer_myrvold_params::embedding = mp.emb());
    boost::make_biconnected_planar(mp.bg, mp.emb());
    reindex_edges(mp.bg);
    boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = mp.bg,
        boost::boyer_myrvold_params::embedding = mp.emb());
    boost::make_maximal_planar(mp.bg, mp.emb());
    reindex_edges(mp.bg);
    boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = mp.bg,
        boost::boyer_myrvold_params::embedding = mp.emb());
    boost::planar_canonical_ordering(mp.bg, mp.emb(), std::back_inserter(mp.ordering));
    return mp;
}

}  // namespace

Drawing straight_line_drawing(const Graph& g) {
    auto check = is_planar(g);
    if (!check.planar) throw InvalidGraph("straight_line_drawing: graph is not planar");
    Drawing d;
    d.coords.assign(g.n, {0.0, 0.0});
    if (g.n == 1) return d;
    if (g.n == 2) {
        d.coords[1] = {1.0, 0.0};
        return d;
    }

    MaximalPlanar mp = augment_maximal(g);
    struct Coord {
        std::size_t x, y;
    };
    std::vector<Coord> coords(boost::num_vertices(mp.bg));
    boost::chrobak_payne_straight_line_drawing(
        mp.bg, mp.emb(), mp.ordering.begin(), mp.ordering.end(),
        boost::make_iterator_property_map(coords.begin(),
                                          boost::get(boost::vertex_index, mp.bg)));
    for (int v = 0; v < g.n; v++)
        d.coords[v] = {static_cast<double>(coords[v].x),
                       static_cast<double>(coords[v].y)};
    return d;
}

std::vector<int> canonical_insertion_order(const Graph& g) {
    auto check = is_planar(g);
    if (!check.planar)
        throw InvalidGraph("canonical_insertion_order: graph is not planar");
    if (g.n > 0 && !is_connected(g))
        throw InvalidGraph("canonical_insertion_order: graph is not connected");
    std::vector<int> order;
    if (g.n <= 2) {
        for (int v = 0; v < g.n; v++) order.push_back(v);
        return order;
    }
    MaximalPlanar mp = augment_maximal(g);
    for (auto v : mp.ordering) order.push_back(static_cast<int>(v));
    return order;
}

namespace {

constexpr double kGeomEps = 1e-9;

double orient(const std::array<double, 2>& a, const std::array<double, 2>& b,
              const std::array<double, 2>& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool on_segment_interior(const std::array<double, 2>& a,
                         const std::array<double, 2>& b,
                         const std::array<double, 2>& p) {
    double cross = orient(a, b, p);
    double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    if (len < kGeomEps) return false;
    if (std::abs(cross) > kGeomEps * len) return false;
    double dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
    double t = dot / (len * len);
    return t > kGeomEps && t < 1.0 - kGeomEps;
}

}  // namespace

std::vector<CrossingPoint> find_crossings(const Graph& g, const Drawing& d) {
    validate(g);
    if (static_cast<int>(d.coords.size()) != g.n)
        throw DegenerateDrawing("drawing has wrong coordinate count");

    for (int u = 0; u < g.n; u++)
        for (int v = u + 1; v < g.n; v++) {
            double dx = d.coords[u][0] - d.coords[v][0];
            double dy = d.coords[u][1] - d.coords[v][1];
            if (std::hypot(dx, dy) < kGeomEps)
                throw DegenerateDrawing("vertices " + std::to_string(u) + " and " +
                                        std::to_string(v) + " coincide");
        }
    // Vertex interior to a non-incident edge breaks general position.
    for (size_t e = 0; e < g.edges.size(); e++) {
        auto [u, v] = g.edges[e];
        for (int w = 0; w < g.n; w++) {
            if (w == u || w == v) continue;
            if (on_segment_interior(d.coords[u], d.coords[v], d.coords[w]))
                throw DegenerateDrawing("vertex " + std::to_string(w) +
                                        " lies inside edge (" + std::to_string(u) +
                                        "," + std::to_string(v) + ")");
        }
    }

    std::vector<CrossingPoint> crossings;
    int m = g.m();
    for (int i = 0; i < m; i++) {
        auto [a, b] = g.edges[i];
        for (int j = i + 1; j < m; j++) {
            auto [c, cc] = g.edges[j];
            if (a == c || a == cc || b == c || b == cc) continue;  // shared endpoint
            const auto &pa = d.coords[a], &pb = d.coords[b];
            const auto &pc = d.coords[c], &pd = d.coords[cc];
            double scale = std::max({std::hypot(pb[0] - pa[0], pb[1] - pa[1]),
                                     std::hypot(pd[0] - pc[0], pd[1] - pc[1]), 1.0});
            double o1 = orient(pa, pb, pc);
            double o2 = orient(pa, pb, pd);
            double o3 = orient(pc, pd, pa);
            double o4 = orient(pc, pd, pb);
            double eps = kGeomEps * scale * scale;
            bool z1 = std::abs(o1) < eps, z2 = std::abs(o2) < eps;
            bool z3 = std::abs(o3) < eps, z4 = std::abs(o4) < eps;
            if ((z1 && z2) || (z3 && z4)) {
                // collinear segments: overlapping means degenerate; the
                // vertex-interior scan above already rejected touching cases,
                // so disjoint collinear segments are fine
                double lo1 = std::min(pa[0], pb[0]), hi1 = std::max(pa[0], pb[0]);
                double lo2 = std::min(pc[0], pd[0]), hi2 = std::max(pc[0], pd[0]);
                double vlo1 = std::min(pa[1], pb[1]), vhi1 = std::max(pa[1], pb[1]);
                double vlo2 = std::min(pc[1], pd[1]), vhi2 = std::max(pc[1], pd[1]);
                bool overlap = hi1 > lo2 + kGeomEps && hi2 > lo1 + kGeomEps;
                bool voverlap = vhi1 > vlo2 + kGeomEps && vhi2 > vlo1 + kGeomEps;
                if (z1 && z2 && (overlap || voverlap))
                    throw DegenerateDrawing("edges " + std::to_string(i) + " and " +
                                            std::to_string(j) + " are collinear and overlap");
                continue;
            }
            if (z1 || z2 || z3 || z4) continue;  // endpoint touches are non-crossings
            if ((o1 > 0) == (o2 > 0) || (o3 > 0) == (o4 > 0)) continue;
            double t = o3 / (o3 - o4);  // along (pa,pb)... parameter on segment ab
            CrossingPoint cp;
            cp.e1 = i;
            cp.e2 = j;
            cp.x = pa[0] + t * (pb[0] - pa[0]);
            cp.y = pa[1] + t * (pb[1] - pa[1]);
            crossings.push_back(cp);
        }
    }
    // General position: no two crossings may share a point (three or more
    // segments through one interior point).
    for (size_t i = 0; i < crossings.size(); i++)
        for (size_t j = i + 1; j < crossings.size(); j++) {
            double dx = crossings[i].x - crossings[j].x;
            double dy = crossings[i].y - crossings[j].y;
            if (std::hypot(dx, dy) < 1e-7)
                throw DegenerateDrawing("multiple crossings at one point");
        }
    return crossings;
}

FaceSet trace_faces(const Graph& g, const Drawing& d) {
    validate(g);
    if (!is_connected(g)) throw InvalidGraph("face tracing requires a connected graph");
    if ((int)d.coords.size() != g.n) throw InvalidGraph("drawing size mismatch");
    if (!find_crossings(g, d).empty()) throw InvalidGraph("drawing has crossings");

    // Angular rotation at each vertex; darts are (v, neighbor-slot).
    std::vector<std::vector<int>> rot(g.n);
    for (auto [a, b] : g.edges) {
        rot[a].push_back(b);
        rot[b].push_back(a);
    }
    for (int v = 0; v < g.n; v++) {
        std::sort(rot[v].begin(), rot[v].end(), [&](int x, int y) {
            double ax = std::atan2(d.coords[x][1] - d.coords[v][1], d.coords[x][0] - d.coords[v][0]);
            double ay = std::atan2(d.coords[y][1] - d.coords[v][1], d.coords[y][0] - d.coords[v][0]);
            return ax < ay;
        });
    }
    std::vector<std::vector<int>> slot_of(g.n);
    for (int v = 0; v < g.n; v++) {
        slot_of[v].assign(g.n, -1);
        for (int s = 0; s < (int)rot[v].size(); s++) slot_of[v][rot[v][s]] = s;
    }

    FaceSet out;
    std::vector<std::vector<char>> used(g.n);
    for (int v = 0; v < g.n; v++) used[v].assign(rot[v].size(), 0);
    for (int v0 = 0; v0 < g.n; v0++) {
        for (int s0 = 0; s0 < (int)rot[v0].size(); s0++) {
            if (used[v0][s0]) continue;
            std::vector<int> walk;
            double area2 = 0.0;
            int v = v0, s = s0;
            do {
                used[v][s] = 1;
                int w = rot[v][s];
                walk.push_back(v);
                area2 += d.coords[v][0] * d.coords[w][1] - d.coords[w][0] * d.coords[v][1];
                // next dart: arrive at w from v, take the next edge clockwise
                int back = slot_of[w][v];
                int deg = (int)rot[w].size();
                s = (back + deg - 1) % deg;
                v = w;
            } while (v != v0 || s != s0);
            if (area2 < 0 || (int)walk.size() == 2 * g.m()) {
                // clockwise total: the unbounded face (a tree's single walk
                // covers every dart and also bounds the unbounded region)
                out.outer = (int)out.walks.size();
            }
            out.walks.push_back(std::move(walk));
        }
    }
    if (out.outer < 0) throw InvalidGraph("no outer face found");
    return out;
}

}  // namespace mislat
