#pragma once

#include <cstdint>
#include <vector>

#include "mislat/cluster.hpp"
#include "mislat/graph.hpp"
#include "mislat/planar.hpp"

namespace mislat {

// Axial coordinates on the triangular lattice. Neighbors differ by one of
// (1,0), (-1,0), (0,1), (0,-1), (1,-1), (-1,1).
struct LatticeSite {
    int q = 0;
    int r = 0;
    auto operator<=>(const LatticeSite&) const = default;
};

bool sites_adjacent(const LatticeSite& a, const LatticeSite& b);

struct SitePlacement {
    LatticeSite at;
    int cluster = 0;   // original graph vertex
    std::int8_t tau = 1;
};

struct LatticeLink {
    LatticeSite a, b;
    bool ferro = false;  // true: intra-cluster copy bond; false: graph edge
    int edge = -1;       // index into g.edges when ferro == false
};

// One lattice growth step, kept for invariant audits.
struct InsertionRecord {
    int vertex = 0;
    int attach_count = 0;   // earlier neighbors linked at this step
    int growth = 0;         // side increase
    int side_after = 0;
    std::vector<int> port_columns;  // eligible ports after the step, sorted
};

// A graph embedded as site clusters in a triangular patch of given side.
// All occupied sites satisfy q >= 0, r >= 0, q + r <= side.
struct ClusterLayout {
    int n = 0;
    int side = 0;
    std::vector<SitePlacement> sites;
    std::vector<LatticeLink> links;
    std::vector<InsertionRecord> trace;
};

struct LayoutStats {
    int side = 0;
    int sites = 0;
    int clusters = 0;
    int max_cluster_size = 0;
};

// Insertion order for the iterative embedding: every vertex after the first
// is adjacent to an earlier one, and no vertex is enclosed by a face whose
// boundary is numbered entirely below it. Deterministic.
std::vector<int> vertex_order(const Graph& g, const Drawing& d);
std::vector<int> vertex_order(const Graph& g);

// Independent validity check for the two ordering conditions, evaluated
// against the face structure of the drawing.
bool check_vertex_order(const Graph& g, const Drawing& d, const std::vector<int>& order);

// Embeds a connected planar graph into the triangular lattice, one vertex
// cluster per graph vertex, growing a convex triangular patch. Side is at
// most 2(N-1) and occupied sites fewer than 2N^2. Eligible perimeter ports
// keep pairwise distance >= 2 after every insertion; violations of the
// internal invariants raise EmbeddingOverflow.
ClusterLayout embed_planar(const Graph& g);

LayoutStats layout_stats(const ClusterLayout& layout);

// The spin-level model realized by the layout: one cluster per vertex,
// ferromagnetic unit tree bonds, one antiferromagnetic unit link per edge.
ClusterModel to_cluster_model(const ClusterLayout& layout);

}  // namespace mislat
