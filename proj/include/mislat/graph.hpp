#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace mislat {

using Edge = std::pair<int, int>;  // normalized u < v

// Simple undirected graph, 0-indexed vertices, no self-loops or parallel
// edges. Edge list kept sorted so equal graphs compare equal.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;

    Graph() = default;
    explicit Graph(int n_vertices) : n(n_vertices) {}
    Graph(int n_vertices, std::vector<Edge> edge_list);

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int m() const { return static_cast<int>(edges.size()); }

    // Neighbor lists, each sorted ascending.
    std::vector<std::vector<int>> adjacency() const;

    // Neighbor bitmasks as packed 64-bit words, word count = (n+63)/64.
    std::vector<std::vector<std::uint64_t>> adjacency_bits() const;

    bool operator==(const Graph&) const = default;
};

// Throws InvalidGraph if vertex ids are out of range or edges malformed.
void validate(const Graph& g);

bool is_connected(const Graph& g);

// Complete graph, cycle, path, empty graph on n vertices.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph empty_graph(int n);
Graph complete_bipartite(int a, int b);
Graph petersen_graph();

}  // namespace mislat
