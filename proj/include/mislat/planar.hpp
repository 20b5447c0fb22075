#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mislat/graph.hpp"

namespace mislat {

// Straight-line drawing: one coordinate pair per vertex.
struct Drawing {
    std::vector<std::array<double, 2>> coords;
};

// Combinatorial embedding of a planar graph. `rotation[v]` lists the
// neighbors of v in embedding order; `faces` lists each face's boundary
// walk (vertices may repeat on a walk when the graph has bridges).
// Faces are per connected component; isolated vertices contribute none.
struct PlanarEmbedding {
    std::vector<std::vector<int>> rotation;
    std::vector<std::vector<int>> faces;
};

struct PlanarCheck {
    bool planar = false;
    std::optional<PlanarEmbedding> embedding;  // present iff planar
};

PlanarCheck is_planar(const Graph& g);

// Straight-line integer-grid drawing of a planar graph.
// Throws InvalidGraph if g is not planar.
Drawing straight_line_drawing(const Graph& g);

// One interior intersection of two edge segments. e1 < e2 index g.edges.
struct CrossingPoint {
    int e1, e2;
    double x, y;
};

// All pairwise interior segment crossings, ordered lexicographically by
// (e1, e2). Edges sharing an endpoint never cross by definition.
// Throws DegenerateDrawing when the drawing violates general position:
// coincident vertex coordinates, a vertex interior to a non-incident
// segment, collinear overlapping segments, or three segments through a
// common interior point.
std::vector<CrossingPoint> find_crossings(const Graph& g, const Drawing& d);

// Face walks induced by a crossing-free drawing of a connected graph,
// derived from the angular order of edges at each vertex. `outer` indexes
// the walk bounding the unbounded region.
struct FaceSet {
    std::vector<std::vector<int>> walks;
    int outer = -1;
};

FaceSet trace_faces(const Graph& g, const Drawing& d);

// Vertex order derived from a maximal planar augmentation of a connected
// planar graph. Each vertex after the first attaches to a contiguous arc of
// the boundary of the already-placed subgraph, and a vertex enclosed by the
// arc has no edges to later vertices.
std::vector<int> canonical_insertion_order(const Graph& g);

}  // namespace mislat
