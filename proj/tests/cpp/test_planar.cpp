#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "mislat/errors.hpp"
#include "mislat/graph.hpp"
#include "mislat/planar.hpp"

using namespace mislat;

namespace {

Graph cube_graph() {
    Graph g(8);
    for (int i = 0; i < 4; i++) {
        g.add_edge(i, (i + 1) % 4);
        g.add_edge(4 + i, 4 + (i + 1) % 4);
        g.add_edge(i, 4 + i);
    }
    return g;
}

int face_count(const Graph& g) {
    auto check = is_planar(g);
    REQUIRE(check.planar);
    return static_cast<int>(check.embedding->faces.size());
}

// The drawing of K5 with one interior crossing, fixed for reuse: outer
// triangle 0,1,2; vertex 3 inside it; vertex 4 outside near the bottom-left.
Drawing k5_one_crossing_drawing() {
    return Drawing{{{0, 0}, {4, 0}, {2, 4}, {2, 1.2}, {-1.5, -1}}};
}

Drawing transformed(const Drawing& d, double theta, double tx, double ty) {
    Drawing out;
    for (auto [x, y] : d.coords)
        out.coords.push_back({x * std::cos(theta) - y * std::sin(theta) + tx,
                              x * std::sin(theta) + y * std::cos(theta) + ty});
    return out;
}

std::set<std::pair<int, int>> crossing_pairs(const std::vector<CrossingPoint>& cps) {
    std::set<std::pair<int, int>> s;
    for (const auto& c : cps) s.insert({c.e1, c.e2});
    return s;
}

}  // namespace

TEST_CASE("planarity of the canonical graphs") {
    CHECK(is_planar(complete_graph(4)).planar);
    CHECK_FALSE(is_planar(complete_graph(5)).planar);
    CHECK_FALSE(is_planar(complete_bipartite(3, 3)).planar);
    CHECK_FALSE(is_planar(petersen_graph()).planar);
    CHECK(is_planar(cube_graph()).planar);
    CHECK(is_planar(empty_graph(0)).planar);
    CHECK(is_planar(empty_graph(3)).planar);
}

TEST_CASE("embedding satisfies Euler's formula on connected graphs") {
    CHECK(face_count(complete_graph(4)) == 6 - 4 + 2);
    CHECK(face_count(cycle_graph(4)) == 4 - 4 + 2);
    CHECK(face_count(cube_graph()) == 12 - 8 + 2);
    CHECK(face_count(path_graph(5)) == 1);  // tree: single face
}

TEST_CASE("embedding structure is consistent") {
    Graph g = cube_graph();
    auto check = is_planar(g);
    REQUIRE(check.planar);
    const auto& emb = *check.embedding;
    auto adj = g.adjacency();
    int total_face_len = 0;
    for (const auto& f : emb.faces) total_face_len += static_cast<int>(f.size());
    CHECK(total_face_len == 2 * g.m());
    for (int v = 0; v < g.n; v++) {
        auto rot = emb.rotation[v];
        std::sort(rot.begin(), rot.end());
        CHECK(rot == adj[v]);
    }
}

TEST_CASE("straight-line drawings of planar graphs have no crossings") {
    for (const Graph& g : {complete_graph(4), cycle_graph(5), cube_graph(),
                           path_graph(7), complete_graph(3)}) {
        Drawing d = straight_line_drawing(g);
        REQUIRE(static_cast<int>(d.coords.size()) == g.n);
        CHECK(find_crossings(g, d).empty());
        for (auto [x, y] : d.coords) {
            CHECK(x == std::floor(x));
            CHECK(y == std::floor(y));
        }
    }
    CHECK_THROWS_AS(straight_line_drawing(complete_graph(5)), InvalidGraph);
}

TEST_CASE("planar drawing of C4 has no crossings") {
    Graph c4 = cycle_graph(4);
    Drawing square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    CHECK(find_crossings(c4, square).empty());
}

TEST_CASE("edges sharing an endpoint are never crossings") {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    Drawing v{{{0, 0}, {1, 1}, {-1, 1}}};
    CHECK(find_crossings(g, v).empty());
}

TEST_CASE("two disjoint edges in an X cross once") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    Drawing x{{{-1, -1}, {1, 1}, {-1, 1}, {1, -1}}};
    auto cps = find_crossings(g, x);
    REQUIRE(cps.size() == 1);
    CHECK(cps[0].e1 == 0);
    CHECK(cps[0].e2 == 1);
    CHECK(cps[0].x == doctest::Approx(0.0));
    CHECK(cps[0].y == doctest::Approx(0.0));
}

TEST_CASE("K5 with the one-crossing drawing") {
    Graph k5 = complete_graph(5);
    auto cps = find_crossings(k5, k5_one_crossing_drawing());
    REQUIRE(cps.size() == 1);
    // the crossing joins edge (0,1) and edge (3,4)
    CHECK(k5.edges[cps[0].e1] == Edge{0, 1});
    CHECK(k5.edges[cps[0].e2] == Edge{3, 4});
}

TEST_CASE("K5 drawn as a square with exact center is degenerate") {
    Graph k5 = complete_graph(5);
    Drawing square_center{{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}}};
    // the square's diagonals pass through the central vertex
    CHECK_THROWS_AS(find_crossings(k5, square_center), DegenerateDrawing);
}

TEST_CASE("K5 drawn as a square with near-center vertex has three crossings") {
    Graph k5 = complete_graph(5);
    Drawing nudged{{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 1.2}}};
    auto cps = find_crossings(k5, nudged);
    CHECK(cps.size() == 3);
}

TEST_CASE("crossings are invariant under rotation and translation") {
    Graph k5 = complete_graph(5);
    Drawing base = k5_one_crossing_drawing();
    auto ref = crossing_pairs(find_crossings(k5, base));
    for (double theta : {0.3, 1.2, 2.9}) {
        Drawing t = transformed(base, theta, 5.0, -3.0);
        CHECK(crossing_pairs(find_crossings(k5, t)) == ref);
    }
}

TEST_CASE("degenerate drawings are rejected") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    SUBCASE("coincident vertices") {
        Drawing d{{{0, 0}, {1, 1}, {0, 0}, {2, 2}}};
        CHECK_THROWS_AS(find_crossings(g, d), DegenerateDrawing);
    }
    SUBCASE("vertex interior to a non-incident edge") {
        Drawing d{{{0, 0}, {2, 2}, {1, 1}, {5, 0}}};
        CHECK_THROWS_AS(find_crossings(g, d), DegenerateDrawing);
    }
    SUBCASE("three segments through one point") {
        Graph h(6);
        h.add_edge(0, 1);
        h.add_edge(2, 3);
        h.add_edge(4, 5);
        Drawing d{{{-1, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, 0}, {1, 0}}};
        CHECK_THROWS_AS(find_crossings(h, d), DegenerateDrawing);
    }
}
