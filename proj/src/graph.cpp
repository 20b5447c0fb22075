#include "mislat/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "mislat/errors.hpp"

namespace mislat {

Graph::Graph(int n_vertices, std::vector<Edge> edge_list) : n(n_vertices) {
    for (auto& [u, v] : edge_list) add_edge(u, v);
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw InvalidGraph("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw InvalidGraph("edge endpoint out of range: (" + std::to_string(u) +
                           "," + std::to_string(v) + ") with n=" + std::to_string(n));
    Edge e{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it != edges.end() && *it == e)
        throw InvalidGraph("duplicate edge (" + std::to_string(e.first) + "," +
                           std::to_string(e.second) + ")");
    edges.insert(it, e);
}

bool Graph::has_edge(int u, int v) const {
    Edge e{std::min(u, v), std::max(u, v)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

std::vector<std::vector<std::uint64_t>> Graph::adjacency_bits() const {
    int words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(words, 0));
    for (auto [u, v] : edges) {
        adj[u][v >> 6] |= 1ULL << (v & 63);
        adj[v][u >> 6] |= 1ULL << (u & 63);
    }
    return adj;
}

void validate(const Graph& g) {
    if (g.n < 0) throw InvalidGraph("negative vertex count");
    Edge prev{-1, -1};
    for (auto [u, v] : g.edges) {
        if (u >= v) throw InvalidGraph("edge not normalized");
        if (u < 0 || v >= g.n) throw InvalidGraph("edge endpoint out of range");
        if (Edge{u, v} == prev) throw InvalidGraph("duplicate edge");
        if (Edge{u, v} < prev) throw InvalidGraph("edge list not sorted");
        prev = {u, v};
    }
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    auto adj = g.adjacency();
    std::vector<char> seen(g.n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                count++;
                q.push(v);
            }
    }
    return count == g.n;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; u++)
        for (int v = u + 1; v < n; v++) g.add_edge(u, v);
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; u++) g.add_edge(u, (u + 1) % n);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int u = 0; u + 1 < n; u++) g.add_edge(u, u + 1);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; u++)
        for (int v = 0; v < b; v++) g.add_edge(u, a + v);
    return g;
}

Graph petersen_graph() {
    Graph g(10);
    for (int i = 0; i < 5; i++) {
        g.add_edge(i, (i + 1) % 5);      // outer pentagon
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        g.add_edge(i, 5 + i);            // spokes
    }
    return g;
}

}  // namespace mislat
