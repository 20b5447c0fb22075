#include "mislat/embed.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "mislat/cluster.hpp"
#include "mislat/errors.hpp"
#include "mislat/oracle.hpp"
#include "mislat/planar.hpp"

using namespace mislat;

namespace {

// Structural audit of a finished layout against the graph it encodes.
void check_layout(const Graph& g, const ClusterLayout& L) {
    REQUIRE(L.n == g.n);
    REQUIRE(L.side <= 2 * (g.n - 1) + (g.n == 1 ? 0 : 0));
    REQUIRE((int)L.sites.size() <= 2 * g.n * g.n);

    std::set<LatticeSite> seen;
    std::map<LatticeSite, int> owner;
    for (const auto& sp : L.sites) {
        CHECK(sp.at.q >= 0);
        CHECK(sp.at.r >= 0);
        CHECK(sp.at.q + sp.at.r <= L.side);
        CHECK(sp.tau == 1);
        REQUIRE(seen.insert(sp.at).second);
        owner[sp.at] = sp.cluster;
    }

    // Clusters form spanning trees under ferro links; each graph edge is
    // realized by exactly one labeled lattice link.
    std::vector<int> csize(g.n, 0), ferro_count(g.n, 0);
    for (const auto& sp : L.sites) csize[sp.cluster]++;
    std::map<LatticeSite, std::vector<LatticeSite>> ferro_adj;
    std::set<int> edges_seen;
    for (const auto& lk : L.links) {
        CHECK(sites_adjacent(lk.a, lk.b));
        REQUIRE(owner.count(lk.a));
        REQUIRE(owner.count(lk.b));
        if (lk.ferro) {
            REQUIRE(owner[lk.a] == owner[lk.b]);
            ferro_count[owner[lk.a]]++;
            ferro_adj[lk.a].push_back(lk.b);
            ferro_adj[lk.b].push_back(lk.a);
        } else {
            REQUIRE(lk.edge >= 0);
            REQUIRE(lk.edge < g.m());
            REQUIRE(edges_seen.insert(lk.edge).second);
            auto [u, v] = g.edges[lk.edge];
            int cu = owner[lk.a], cv = owner[lk.b];
            CHECK(((cu == u && cv == v) || (cu == v && cv == u)));
        }
    }
    CHECK((int)edges_seen.size() == g.m());
    for (int v = 0; v < g.n; v++) {
        REQUIRE(csize[v] >= 1);
        CHECK(ferro_count[v] == csize[v] - 1);
    }
    // Tree connectivity per cluster.
    for (int v = 0; v < g.n; v++) {
        LatticeSite start{-1, -1};
        for (const auto& sp : L.sites)
            if (sp.cluster == v) {
                start = sp.at;
                break;
            }
        std::set<LatticeSite> comp{start};
        std::vector<LatticeSite> stack{start};
        while (!stack.empty()) {
            LatticeSite cur = stack.back();
            stack.pop_back();
            for (const auto& nxt : ferro_adj[cur])
                if (comp.insert(nxt).second) stack.push_back(nxt);
        }
        CHECK((int)comp.size() == csize[v]);
    }

    // Growth audit from the insertion trace.
    int prev_side = 0;
    auto adj = g.adjacency();
    for (const auto& rec : L.trace) {
        CHECK(rec.growth >= 1);
        CHECK(rec.growth <= 2);
        CHECK(rec.side_after == prev_side + rec.growth);
        prev_side = rec.side_after;
        // A fresh-port insertion (no earlier neighbors) is legal; a leaf
        // always has its neighbor placed first and grows one row.
        CHECK(rec.attach_count <= (int)adj[rec.vertex].size());
        if ((int)adj[rec.vertex].size() == 1) {
            CHECK(rec.attach_count == 1);
            CHECK(rec.growth == 1);
        }
        for (size_t k = 1; k < rec.port_columns.size(); k++)
            CHECK(rec.port_columns[k] - rec.port_columns[k - 1] >= 2);
    }
    if (g.n >= 2) CHECK(prev_side == L.side);

    // The derived spin model is gauge-consistent with a uniform positive
    // orientation.
    ClusterModel cm = to_cluster_model(L);
    CHECK(cm.total_spins() == (int)L.sites.size());
    auto tau = infer_tau(cm);
    for (const auto& tc : tau)
        for (auto t : tc) CHECK(t == 1);
}

std::set<std::vector<int>> decoded_family(const Graph& g, const ClusterLayout& L) {
    ClusterModel cm = to_cluster_model(L);
    IsingInstance inst = build_cluster_hamiltonian(cm, 1.0);
    OracleBudget budget;
    budget.max_spins = 26;
    GroundSolution gs = ising_ground(inst, budget);
    std::set<std::vector<int>> fam;
    for (const auto& cfg : gs.ground_configs) fam.insert(decode_cluster(cm, cfg));
    (void)g;
    return fam;
}

std::set<std::vector<int>> mis_family(const Graph& g) {
    MisOptions opts;
    opts.enumerate_all = true;
    MisResult res = mis_exact(g, opts);
    return {res.sets.begin(), res.sets.end()};
}

void check_end_to_end(const Graph& g, const ClusterLayout& L) {
    CHECK(decoded_family(g, L) == mis_family(g));
}

Graph random_connected_planar(std::mt19937& rng, int n, int extra_edges) {
    Graph g(n);
    for (int v = 1; v < n; v++) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        g.add_edge(pick(rng), v);
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < extra_edges; t++) {
        int u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(std::min(u, v), std::max(u, v))) continue;
        Graph trial = g;
        trial.add_edge(u, v);
        if (is_planar(trial).planar) g = std::move(trial);
    }
    return g;
}

}  // namespace

TEST_CASE("ordering accepts and rejects the right K4 permutations") {
    Graph g = complete_graph(4);
    Drawing d;
    d.coords = {{0, 0}, {4, 0}, {2, 4}, {2, 1}};  // vertex 3 interior

    std::vector<int> order{0, 1, 2, 3};
    int valid = 0;
    std::sort(order.begin(), order.end());
    do {
        if (check_vertex_order(g, d, order)) valid++;
    } while (std::next_permutation(order.begin(), order.end()));
    // The enclosed vertex must precede the last corner: exactly the orders
    // that do not put vertex 3 last.
    CHECK(valid == 18);

    CHECK(check_vertex_order(g, d, {3, 0, 1, 2}));
    CHECK(check_vertex_order(g, d, {0, 1, 3, 2}));
    CHECK_FALSE(check_vertex_order(g, d, {0, 1, 2, 3}));
}

TEST_CASE("ordering requires an earlier neighbor") {
    Graph g = path_graph(4);
    Drawing d;
    d.coords = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    CHECK(check_vertex_order(g, d, {0, 1, 2, 3}));
    CHECK(check_vertex_order(g, d, {1, 0, 2, 3}));
    CHECK(check_vertex_order(g, d, {1, 2, 0, 3}));
    CHECK_FALSE(check_vertex_order(g, d, {0, 2, 1, 3}));  // 2 lands with no anchor
    CHECK_FALSE(check_vertex_order(g, d, {0, 3, 1, 2}));
    CHECK_FALSE(check_vertex_order(g, d, {0, 1, 2}));     // not a permutation
    CHECK_FALSE(check_vertex_order(g, d, {0, 1, 2, 2}));
}

TEST_CASE("computed orders certify on canonical graphs") {
    for (const Graph& g : {complete_graph(4), cycle_graph(6), path_graph(7), complete_graph(2),
                           complete_bipartite(2, 3)}) {
        std::vector<int> order = vertex_order(g);
        CHECK((int)order.size() == g.n);
        CHECK(check_vertex_order(g, straight_line_drawing(g), order));
    }
    CHECK(vertex_order(complete_graph(1)) == std::vector<int>{0});
}

TEST_CASE("computed orders certify on random planar graphs") {
    std::mt19937 rng(411);
    for (int trial = 0; trial < 40; trial++) {
        int n = 3 + (int)(rng() % 10);
        Graph g = random_connected_planar(rng, n, 2 * n);
        std::vector<int> order = vertex_order(g);
        CHECK(check_vertex_order(g, straight_line_drawing(g), order));
    }
}

TEST_CASE("single vertex occupies one site") {
    ClusterLayout L = embed_planar(complete_graph(1));
    LayoutStats s = layout_stats(L);
    CHECK(s.side == 0);
    CHECK(s.sites == 1);
    CHECK(s.clusters == 1);
    CHECK(s.max_cluster_size == 1);
    CHECK(L.links.empty());
}

TEST_CASE("single edge grows the side by one") {
    Graph g = complete_graph(2);
    ClusterLayout L = embed_planar(g);
    LayoutStats s = layout_stats(L);
    CHECK(s.side == 1);
    CHECK(s.sites == 2);
    CHECK(s.clusters == 2);
    CHECK(s.max_cluster_size == 1);
    REQUIRE(L.links.size() == 1);
    CHECK_FALSE(L.links[0].ferro);
    CHECK(sites_adjacent(L.links[0].a, L.links[0].b));
    check_layout(g, L);
    check_end_to_end(g, L);
}

TEST_CASE("triangle embeds and decodes its three maximum sets") {
    Graph g = complete_graph(3);
    ClusterLayout L = embed_planar(g);
    check_layout(g, L);
    check_end_to_end(g, L);
    CHECK(mis_family(g) == std::set<std::vector<int>>{{0}, {1}, {2}});
}

TEST_CASE("complete graph on four vertices embeds within the enumeration budget") {
    Graph g = complete_graph(4);
    ClusterLayout L = embed_planar(g);
    check_layout(g, L);
    CHECK((int)L.sites.size() <= 24);
    check_end_to_end(g, L);
    CHECK(decoded_family(g, L) == std::set<std::vector<int>>{{0}, {1}, {2}, {3}});
}

TEST_CASE("canonical small graphs embed soundly end to end") {
    for (const Graph& g : {cycle_graph(4), cycle_graph(5), path_graph(5), path_graph(2),
                           complete_bipartite(1, 4), complete_bipartite(2, 3)}) {
        ClusterLayout L = embed_planar(g);
        check_layout(g, L);
        if ((int)L.sites.size() <= 24) check_end_to_end(g, L);
    }
}

TEST_CASE("wheel graph embeds soundly") {
    // Hub 0 joined to a 5-cycle rim.
    Graph g(6);
    for (int k = 1; k <= 5; k++) g.add_edge(0, k);
    for (int k = 1; k <= 5; k++) g.add_edge(k, k % 5 + 1);
    ClusterLayout L = embed_planar(g);
    check_layout(g, L);
    if ((int)L.sites.size() <= 24) check_end_to_end(g, L);
}

TEST_CASE("every connected planar graph on up to five vertices embeds") {
    for (int n = 1; n <= 5; n++) {
        int pairs = n * (n - 1) / 2;
        std::vector<Edge> all;
        for (int u = 0; u < n; u++)
            for (int v = u + 1; v < n; v++) all.push_back({u, v});
        for (int mask = 0; mask < (1 << pairs); mask++) {
            Graph g(n);
            for (int b = 0; b < pairs; b++)
                if (mask >> b & 1) g.add_edge(all[b].first, all[b].second);
            if (!is_connected(g)) continue;
            if (!is_planar(g).planar) continue;
            ClusterLayout L = embed_planar(g);
            check_layout(g, L);
            if ((int)L.sites.size() <= 17) check_end_to_end(g, L);
        }
    }
}

TEST_CASE("random planar graphs embed within the growth bounds") {
    std::mt19937 rng(2026);
    int end_to_end_done = 0;
    for (int trial = 0; trial < 30; trial++) {
        int n = 4 + (int)(rng() % 9);  // up to 12
        Graph g = random_connected_planar(rng, n, 2 * n);
        ClusterLayout L = embed_planar(g);
        check_layout(g, L);
        CHECK(L.side <= 2 * (n - 1));
        CHECK((int)L.sites.size() <= 2 * n * n);
        if ((int)L.sites.size() <= 22) {
            check_end_to_end(g, L);
            end_to_end_done++;
        }
    }
    CHECK(end_to_end_done >= 5);
}

TEST_CASE("trees embed with single-row growth for leaves") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; trial++) {
        int n = 2 + (int)(rng() % 11);
        Graph g(n);
        for (int v = 1; v < n; v++) {
            std::uniform_int_distribution<int> pick(0, v - 1);
            g.add_edge(pick(rng), v);
        }
        ClusterLayout L = embed_planar(g);
        check_layout(g, L);
        if ((int)L.sites.size() <= 22) check_end_to_end(g, L);
    }
}

TEST_CASE("embedding rejects bad inputs") {
    CHECK_THROWS_AS(embed_planar(Graph(0)), InvalidGraph);
    CHECK_THROWS_AS(embed_planar(empty_graph(3)), InvalidGraph);  // disconnected
    CHECK_THROWS_AS(vertex_order(empty_graph(2)), InvalidGraph);
}

TEST_CASE("face tracing matches Euler counts and finds the outer walk") {
    Graph g = complete_graph(4);
    Drawing d;
    d.coords = {{0, 0}, {4, 0}, {2, 4}, {2, 1}};
    FaceSet fs = trace_faces(g, d);
    CHECK((int)fs.walks.size() == g.m() - g.n + 2);
    std::set<int> outer(fs.walks[fs.outer].begin(), fs.walks[fs.outer].end());
    CHECK(outer == std::set<int>{0, 1, 2});

    Graph tree = path_graph(4);
    Drawing td;
    td.coords = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    FaceSet tf = trace_faces(tree, td);
    CHECK((int)tf.walks.size() == 1);
    CHECK(tf.outer == 0);
    CHECK((int)tf.walks[0].size() == 2 * tree.m());
}
