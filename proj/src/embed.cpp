#include "mislat/embed.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "mislat/errors.hpp"

namespace mislat {

bool sites_adjacent(const LatticeSite& a, const LatticeSite& b) {
    int dq = b.q - a.q, dr = b.r - a.r;
    return (dq == 1 && dr == 0) || (dq == -1 && dr == 0) || (dq == 0 && dr == 1) ||
           (dq == 0 && dr == -1) || (dq == 1 && dr == -1) || (dq == -1 && dr == 1);
}

namespace {

// Strict interior test against a closed (possibly weakly simple) walk
// polygon. Darts traversed in both directions cancel in the parity count.
bool strictly_inside(const std::vector<std::array<double, 2>>& poly, double px, double py) {
    bool in = false;
    size_t k = poly.size();
    for (size_t i = 0; i < k; i++) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % k];
        if ((a[1] > py) != (b[1] > py)) {
            double x = a[0] + (py - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if (px < x) in = !in;
        }
    }
    return in;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep, std::vector<int>& back) {
    std::vector<int> idx(g.n, -1);
    back = keep;
    for (size_t i = 0; i < keep.size(); i++) idx[keep[i]] = (int)i;
    Graph h((int)keep.size());
    for (auto [u, v] : g.edges)
        if (idx[u] >= 0 && idx[v] >= 0) h.add_edge(idx[u], idx[v]);
    return h;
}

bool connected_without(const std::vector<std::vector<int>>& adj, const std::set<int>& live,
                       int skip) {
    int start = -1;
    for (int v : live)
        if (v != skip) {
            start = v;
            break;
        }
    if (start < 0) return true;
    std::set<int> seen{start};
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (w != skip && live.count(w) && seen.insert(w).second) stack.push_back(w);
    }
    return (int)seen.size() == (int)live.size() - 1;
}

// Per-walk vertex masks: walk members and vertices strictly enclosed by the
// walk polygon. Only built for graphs small enough for 64-bit masks.
struct WalkData {
    std::vector<uint64_t> member_mask;
    std::vector<uint64_t> inside_mask;
};

WalkData walk_data(const Graph& g, const Drawing& d) {
    WalkData wd;
    if (g.m() == 0) return wd;
    FaceSet fs = trace_faces(g, d);
    for (const auto& walk : fs.walks) {
        std::set<int> on(walk.begin(), walk.end());
        uint64_t mm = 0;
        for (int v : on) mm |= 1ull << v;
        std::vector<std::array<double, 2>> poly;
        for (int v : walk) poly.push_back(d.coords[v]);
        uint64_t im = 0;
        for (int v = 0; v < g.n; v++)
            if (!on.count(v) && strictly_inside(poly, d.coords[v][0], d.coords[v][1]))
                im |= 1ull << v;
        wd.member_mask.push_back(mm);
        wd.inside_mask.push_back(im);
    }
    return wd;
}

// Exhaustive order search: anchored placements, enclosed vertices placed by
// the time their walk completes. Failed prefixes are memoized by vertex set.
bool order_search(const Graph& g, const WalkData& wd, const std::vector<std::vector<int>>& adj,
                  uint64_t mask, std::vector<int>& order, std::set<uint64_t>& dead) {
    if ((int)order.size() == g.n) return true;
    if (dead.count(mask)) return false;
    for (int v = 0; v < g.n; v++) {
        if (mask >> v & 1) continue;
        if (!order.empty()) {
            bool anchored = false;
            for (int w : adj[v])
                if (mask >> w & 1) {
                    anchored = true;
                    break;
                }
            if (!anchored) continue;
        }
        uint64_t nm = mask | (1ull << v);
        bool ok = true;
        for (size_t k = 0; k < wd.member_mask.size(); k++)
            if ((wd.member_mask[k] & ~nm) == 0 && (wd.inside_mask[k] & ~nm) != 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        order.push_back(v);
        if (order_search(g, wd, adj, nm, order, dead)) return true;
        order.pop_back();
    }
    dead.insert(mask);
    return false;
}

}  // namespace

std::vector<int> vertex_order(const Graph& g) { return vertex_order(g, straight_line_drawing(g)); }

std::vector<int> vertex_order(const Graph& g, const Drawing& d) {
    validate(g);
    if (g.n == 0) throw InvalidGraph("empty graph");
    if (!is_connected(g)) throw InvalidGraph("ordering requires a connected graph");
    if ((int)d.coords.size() != g.n) throw InvalidGraph("drawing size mismatch");
    if (g.n == 1) return {0};

    auto adj = g.adjacency();
    bool masks_fit = g.n <= 60;
    WalkData wd;
    if (masks_fit) wd = walk_data(g, d);
    std::vector<bool> opened(wd.member_mask.size(), false);

    std::set<int> live;
    for (int v = 0; v < g.n; v++) live.insert(v);
    std::vector<int> peeled;

    while (live.size() > 1) {
        std::vector<int> keep(live.begin(), live.end());
        std::vector<int> back;
        Graph h = induced_subgraph(g, keep, back);

        std::set<int> outer_verts;
        if (h.m() > 0) {
            Drawing hd;
            for (int v : keep) hd.coords.push_back(d.coords[v]);
            FaceSet fs = trace_faces(h, hd);
            for (int lv : fs.walks[fs.outer]) outer_verts.insert(back[lv]);
        }

        std::vector<int> deg(g.n, 0);
        for (int v : live)
            for (int w : adj[v])
                if (live.count(w)) deg[v]++;

        int pick = -1, tier = 99;
        for (int v : live) {
            if (!connected_without(adj, live, v)) continue;
            // An enclosed vertex waits until its walk has started peeling.
            bool blocked = false;
            for (size_t k = 0; k < wd.inside_mask.size() && !blocked; k++)
                if ((wd.inside_mask[k] >> v & 1) && !opened[k]) blocked = true;
            if (blocked) continue;
            int t = outer_verts.count(v) ? 0 : (deg[v] == 1 ? 1 : 2);
            if (t < tier || (t == tier && v < pick)) {
                tier = t;
                pick = v;
            }
        }
        if (pick < 0) {
            peeled.clear();
            break;
        }
        peeled.push_back(pick);
        for (size_t k = 0; k < wd.member_mask.size(); k++)
            if (wd.member_mask[k] >> pick & 1) opened[k] = true;
        live.erase(pick);
    }
    if (!peeled.empty()) {
        peeled.push_back(*live.begin());
        std::reverse(peeled.begin(), peeled.end());
        if (check_vertex_order(g, d, peeled)) return peeled;
    }

    // The peel missed; search all anchored orders for this drawing.
    if (!masks_fit) throw EmbeddingOverflow("computed ordering failed certification");
    std::vector<int> order;
    std::set<uint64_t> dead;
    if (!order_search(g, wd, adj, 0, order, dead))
        throw InvalidGraph("drawing admits no vertex order meeting the face conditions");
    return order;
}

bool check_vertex_order(const Graph& g, const Drawing& d, const std::vector<int>& order) {
    validate(g);
    if ((int)d.coords.size() != g.n) throw InvalidGraph("drawing size mismatch");
    if ((int)order.size() != g.n) return false;
    std::vector<int> pos(g.n, -1);
    for (int i = 0; i < g.n; i++) {
        int v = order[i];
        if (v < 0 || v >= g.n || pos[v] >= 0) return false;
        pos[v] = i;
    }
    if (g.n == 1) return true;

    // Every vertex after the first attaches to an earlier one.
    auto adj = g.adjacency();
    for (int i = 1; i < g.n; i++) {
        bool anchored = false;
        for (int w : adj[order[i]]) anchored |= pos[w] < i;
        if (!anchored) return false;
    }

    // No vertex may be enclosed by a face walk numbered entirely below it:
    // anything strictly inside a walk polygon precedes the walk's latest
    // vertex.
    FaceSet fs = trace_faces(g, d);
    for (const auto& walk : fs.walks) {
        int walk_max = 0;
        std::set<int> on_walk;
        for (int v : walk) {
            walk_max = std::max(walk_max, pos[v]);
            on_walk.insert(v);
        }
        std::vector<std::array<double, 2>> poly;
        for (int v : walk) poly.push_back(d.coords[v]);
        for (int v = 0; v < g.n; v++) {
            if (on_walk.count(v)) continue;
            if (!strictly_inside(poly, d.coords[v][0], d.coords[v][1])) continue;
            if (pos[v] > walk_max) return false;
        }
    }
    return true;
}

namespace {

// ----- abstract port-line simulation -----------------------------------
//
// Ports of eligible vertices live on a left-to-right line mirroring the
// perimeter. Each insertion must find its earlier neighbors contiguous on
// the line with every strictly-between port already dead. Single-edge
// insertions where both endpoints stay eligible choose a side; the search
// backtracks over those choices.

struct SimStep {
    std::vector<int> targets;  // line-ordered earlier neighbors
    bool left = false;         // side choice for the two-live single-edge case
    int gap = -1;              // line slot opened when there are no targets
};

bool simulate_line(const std::vector<int>& order, const std::vector<int>& pos,
                   const std::vector<std::vector<int>>& adj, int step, std::vector<int>& line,
                   std::vector<SimStep>& steps) {
    int n = (int)order.size();
    if (step == n) return true;
    int vi = order[step];

    auto alive_after = [&](int v, int s) {
        for (int w : adj[v])
            if (pos[w] > s) return true;
        return false;
    };

    std::vector<int> tpos;
    for (int j = 0; j < (int)line.size(); j++)
        for (int w : adj[vi])
            if (line[j] == w && pos[w] < step) tpos.push_back(j);

    bool i_alive = alive_after(vi, step);

    if (tpos.empty()) {
        for (int w : adj[vi])
            if (pos[w] < step) return false;  // pending edge to a vanished port
        if (!i_alive) return false;           // isolated vertex
        // All neighbors come later: the vertex opens a fresh port. Its slot
        // matters for later contiguity, so try every gap.
        for (int gpos = 0; gpos <= (int)line.size(); gpos++) {
            std::vector<int> saved = line;
            line.insert(line.begin() + gpos, vi);
            steps.push_back({{}, false, gpos});
            if (simulate_line(order, pos, adj, step + 1, line, steps)) return true;
            steps.pop_back();
            line = saved;
        }
        return false;
    }

    if (tpos.size() == 1) {
        int j = tpos[0];
        int dvert = line[j];
        bool d_alive = alive_after(dvert, step);
        std::vector<bool> sides;
        if (i_alive && d_alive)
            sides = {false, true};  // prefer the right side
        else
            sides = {false};
        for (bool left : sides) {
            std::vector<int> saved = line;
            if (!d_alive && !i_alive)
                line.erase(line.begin() + j);
            else if (!d_alive)
                line[j] = vi;
            else if (i_alive)
                line.insert(line.begin() + (left ? j : j + 1), vi);
            steps.push_back({{dvert}, left});
            if (simulate_line(order, pos, adj, step + 1, line, steps)) return true;
            steps.pop_back();
            line = saved;
        }
        return false;
    }

    int lo = tpos.front(), hi = tpos.back();
    if (hi - lo + 1 != (int)tpos.size()) return false;  // a live stranger sits inside the run
    for (int j = lo + 1; j < hi; j++)
        if (alive_after(line[j], step)) return false;  // enclosed port would stay live

    std::vector<int> saved = line;
    std::vector<int> targets(line.begin() + lo, line.begin() + hi + 1);
    bool d1_alive = alive_after(line[lo], step);
    bool dm_alive = alive_after(line[hi], step);
    std::vector<int> rebuilt(line.begin(), line.begin() + lo);
    if (d1_alive) rebuilt.push_back(line[lo]);
    if (i_alive) rebuilt.push_back(vi);
    if (dm_alive) rebuilt.push_back(line[hi]);
    rebuilt.insert(rebuilt.end(), line.begin() + hi + 1, line.end());
    line = std::move(rebuilt);
    steps.push_back({targets, false});
    if (simulate_line(order, pos, adj, step + 1, line, steps)) return true;
    steps.pop_back();
    line = saved;
    return false;
}

// ----- lattice replay ----------------------------------------------------

struct BuildState {
    std::vector<SitePlacement> sites;
    std::vector<LatticeLink> links;
    std::map<LatticeSite, int> occupied;        // site -> cluster
    std::vector<std::vector<int>> cluster_sites;  // site indices per cluster
    std::vector<int> port_col;                  // -1 when not on the line
    std::vector<int> line;                      // live ports left to right
    int bottom = 0;                             // current perimeter row, side = -bottom
};

bool in_patch(const BuildState& st, int q, int r, int grow) {
    return q >= 0 && r <= 0 && r >= st.bottom - grow && q <= -r;
}

bool place_site(BuildState& st, int cluster, int q, int r, int grow) {
    if (!in_patch(st, q, r, grow)) return false;
    LatticeSite at{q, r};
    if (st.occupied.count(at)) return false;
    st.occupied[at] = cluster;
    st.cluster_sites[cluster].push_back((int)st.sites.size());
    st.sites.push_back({at, cluster, 1});
    return true;
}

// Live ports always sit on the current perimeter row.
LatticeSite port_site(const BuildState& st, int v) {
    return {st.port_col[v], st.bottom};
}

bool add_link(BuildState& st, LatticeSite a, LatticeSite b, bool ferro, int edge) {
    if (!sites_adjacent(a, b)) return false;
    st.links.push_back({a, b, ferro, edge});
    return true;
}

// Extends v's copy chain down `rows` rows, drifting right by `shift`
// columns (diagonal steps first). Ferro bonds join consecutive copies.
bool descend(BuildState& st, int v, int shift, int rows, int grow) {
    LatticeSite cur = port_site(st, v);
    for (int k = 1; k <= rows; k++) {
        LatticeSite nxt{cur.q + (std::min(shift, k) - std::min(shift, k - 1)), cur.r - 1};
        if (!place_site(st, v, nxt.q, nxt.r, grow)) return false;
        if (!add_link(st, cur, nxt, true, -1)) return false;
        cur = nxt;
    }
    st.port_col[v] = cur.q;
    return true;
}

// Lays the new vertex's ferro chain across [x0, x1] on the new bottom row.
bool lay_chain(BuildState& st, int v, int x0, int x1, int row, int grow) {
    LatticeSite prev{-1, -1};
    for (int x = x0; x <= x1; x++) {
        if (!place_site(st, v, x, row, grow)) return false;
        LatticeSite cur{x, row};
        if (x > x0 && !add_link(st, prev, cur, true, -1)) return false;
        prev = cur;
    }
    return true;
}

struct StepPlan {
    int grow = 0;
    int shift = 0;      // rightward drift for ports right of the run
    int port = -1;      // new vertex port column, -1 when it has none
    bool left = false;  // single-edge side
    int gap = -1;       // line slot for an insertion with no targets
};

int edge_index(const Graph& g, int u, int v) {
    Edge e{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    if (it == g.edges.end() || *it != e) throw InvalidGraph("edge lookup failed");
    return (int)(it - g.edges.begin());
}

// Attempts one insertion under a fixed plan; returns the updated state or
// nothing when the plan violates geometry.
std::optional<BuildState> try_insertion(const BuildState& base, const Graph& g, int vi,
                                        const std::vector<int>& targets, bool i_alive,
                                        const std::vector<bool>& target_alive,
                                        const StepPlan& plan) {
    BuildState st = base;
    int grow = plan.grow;
    int newrow = st.bottom - grow;
    int m = (int)targets.size();

    std::vector<int> tpos;
    for (int t : targets)
        for (int j = 0; j < (int)st.line.size(); j++)
            if (st.line[j] == t) tpos.push_back(j);
    if ((int)tpos.size() != m) return std::nullopt;
    int lo, hi;
    if (m == 0) {
        if (plan.gap < 0 || plan.gap > (int)st.line.size()) return std::nullopt;
        lo = plan.gap;
        hi = plan.gap - 1;  // empty run at the gap
    } else {
        lo = tpos.front();
        hi = tpos.back();
    }

    int q1 = m > 0 ? st.port_col[targets.front()] : -1;
    int qm = m > 0 ? st.port_col[targets.back()] : -1;

    // Reference sites for the run's boundary links before any descent.
    std::vector<LatticeSite> old_port(g.n, LatticeSite{-1, -1});
    for (int t : targets) old_port[t] = port_site(st, t);

    // Ports left of the run descend straight down.
    for (int j = 0; j < lo; j++)
        if (!descend(st, st.line[j], 0, grow, grow)) return std::nullopt;
    // Ports right of the run drift by the plan's shift.
    for (int j = hi + 1; j < (int)st.line.size(); j++)
        if (!descend(st, st.line[j], plan.shift, grow, grow)) return std::nullopt;

    if (m == 0) {
        // Fresh port with no links; its edges arrive with later vertices.
        if (!i_alive) return std::nullopt;
        if (!lay_chain(st, vi, plan.port, plan.port, newrow, grow)) return std::nullopt;
    } else if (m == 1) {
        int d = targets[0];
        bool d_alive = target_alive[0];
        if (d_alive) {
            int dshift = (i_alive && plan.left && plan.port > q1 - 2) ? 2 : 0;
            if (dshift > grow) return std::nullopt;
            if (!descend(st, d, dshift, grow, grow)) return std::nullopt;
        } else if (grow == 2) {
            // Bring one copy within reach of the new bottom row.
            LatticeSite p = old_port[d];
            if (!place_site(st, d, p.q, p.r - 1, grow)) return std::nullopt;
            if (!add_link(st, p, {p.q, p.r - 1}, true, -1)) return std::nullopt;
        }
        int dcol_new = d_alive ? st.port_col[d] : q1;
        int x0, x1;
        if (!i_alive) {
            x0 = x1 = d_alive ? dcol_new + 1 : q1;
        } else if (!d_alive) {
            x0 = x1 = plan.port;
            if (plan.port != q1) return std::nullopt;
        } else if (!plan.left) {
            x0 = dcol_new + 1;
            x1 = plan.port;
            if (x1 < x0) return std::nullopt;
        } else {
            x0 = plan.port;
            x1 = dcol_new - 1;
            if (x1 < x0) return std::nullopt;
        }
        if (!lay_chain(st, vi, x0, x1, newrow, grow)) return std::nullopt;
        // One declared lattice link realizes the graph edge.
        LatticeSite contact = d_alive ? LatticeSite{dcol_new, newrow}
                                      : LatticeSite{q1, newrow + 1};
        LatticeSite mine = d_alive ? LatticeSite{plan.left ? dcol_new - 1 : dcol_new + 1, newrow}
                                   : LatticeSite{q1, newrow};
        if (!i_alive && d_alive) mine = {dcol_new + 1, newrow};
        if (!st.occupied.count(contact) || st.occupied.at(contact) != d) return std::nullopt;
        if (!st.occupied.count(mine) || st.occupied.at(mine) != vi) return std::nullopt;
        if (!add_link(st, mine, contact, false, edge_index(g, vi, d))) return std::nullopt;
    } else {
        // Interior run members die here; their last copy stops one row short
        // so the chain below can reach it.
        for (int k = 0; k < m; k++) {
            int t = targets[k];
            bool endpoint = (k == 0 || k == m - 1);
            if (target_alive[k]) {
                if (!endpoint) return std::nullopt;
                int sh = (k == m - 1) ? plan.shift : 0;
                if (!descend(st, t, sh, grow, grow)) return std::nullopt;
            } else if (grow == 2) {
                LatticeSite p = old_port[t];
                if (!place_site(st, t, p.q, p.r - 1, grow)) return std::nullopt;
                if (!add_link(st, p, {p.q, p.r - 1}, true, -1)) return std::nullopt;
            }
        }
        bool d1_alive = target_alive.front();
        bool dm_alive = target_alive.back();
        int left_end = d1_alive ? st.port_col[targets.front()] + 1 : q1;
        int right_end = dm_alive ? st.port_col[targets.back()] - 1 : qm;
        if (i_alive) right_end = std::max(right_end, plan.port);
        if (i_alive && plan.port < left_end) return std::nullopt;
        if (right_end < left_end) return std::nullopt;
        if (!lay_chain(st, vi, left_end, right_end, newrow, grow)) return std::nullopt;

        // Graph-edge links: in-row to live endpoints, upward to dead ones.
        for (int k = 0; k < m; k++) {
            int t = targets[k];
            LatticeSite mine, theirs;
            if (target_alive[k]) {
                theirs = {st.port_col[t], newrow};
                mine = {st.port_col[t] + (k == 0 ? 1 : -1), newrow};
            } else {
                int c = st.port_col[t];
                theirs = {c, newrow + 1};
                mine = {c, newrow};
            }
            if (!st.occupied.count(theirs) || st.occupied.at(theirs) != t) return std::nullopt;
            if (!st.occupied.count(mine) || st.occupied.at(mine) != vi) return std::nullopt;
            if (!add_link(st, mine, theirs, false, edge_index(g, vi, t))) return std::nullopt;
        }
    }

    // Rebuild the line: dead run members leave, the new vertex enters.
    std::vector<int> rebuilt(st.line.begin(), st.line.begin() + lo);
    std::vector<int> mid;
    for (int k = 0; k < m; k++)
        if (target_alive[k]) mid.push_back(targets[k]);
    if (i_alive) {
        st.port_col[vi] = plan.port;
        if (m == 1 && target_alive[0]) {
            if (plan.left)
                mid.insert(mid.begin(), vi);
            else
                mid.push_back(vi);
        } else {
            mid.insert(mid.begin() + (m > 0 && target_alive.front() ? 1 : 0), vi);
        }
    }
    rebuilt.insert(rebuilt.end(), mid.begin(), mid.end());
    rebuilt.insert(rebuilt.end(), st.line.begin() + hi + 1, st.line.end());
    for (int k = 0; k < m; k++)
        if (!target_alive[k]) st.port_col[targets[k]] = -1;
    st.line = std::move(rebuilt);
    st.bottom = newrow;

    // Perimeter invariants: ports sit on the bottom row, strictly ordered,
    // pairwise spacing >= 2.
    int prev = std::numeric_limits<int>::min();
    for (int v : st.line) {
        int c = st.port_col[v];
        if (c < 0 || c > -st.bottom) return std::nullopt;
        if (prev != std::numeric_limits<int>::min() && c - prev < 2) return std::nullopt;
        auto it = st.occupied.find({c, st.bottom});
        if (it == st.occupied.end() || it->second != v) return std::nullopt;
        prev = c;
    }
    return st;
}

}  // namespace

ClusterLayout embed_planar(const Graph& g) {
    validate(g);
    if (g.n == 0) throw InvalidGraph("empty graph");
    if (!is_connected(g)) throw InvalidGraph("embedding requires a connected graph");

    ClusterLayout out;
    out.n = g.n;
    if (g.n == 1) {
        out.side = 0;
        out.sites.push_back({{0, 0}, 0, 1});
        return out;
    }

    // The face-respecting order is not required here, only convenient: when
    // it exists and admits a port line it is used, otherwise the augmentation
    // order takes over.
    std::vector<int> order;
    try {
        order = vertex_order(g);
    } catch (const std::exception&) {
        order.clear();
    }
    std::vector<int> pos(g.n);
    auto adj = g.adjacency();
    std::vector<SimStep> steps;
    auto simulate_order = [&]() {
        for (int i = 0; i < g.n; i++) pos[order[i]] = i;
        std::vector<int> line{order[0]};
        steps.clear();
        return simulate_line(order, pos, adj, 1, line, steps);
    };
    // Leaves move to just after their neighbor so a single-edge insertion
    // never opens a fresh port, keeping its growth at one row.
    if (order.empty() || !simulate_order()) {
        order = canonical_insertion_order(g);
        std::vector<int> opos(g.n);
        for (int i = 0; i < g.n; i++) opos[order[i]] = i;
        std::vector<std::vector<int>> waiting(g.n);
        std::vector<int> reordered;
        for (int v : order) {
            if (adj[v].size() == 1 && opos[adj[v][0]] > opos[v]) {
                waiting[adj[v][0]].push_back(v);
                continue;
            }
            reordered.push_back(v);
            for (int leaf : waiting[v]) reordered.push_back(leaf);
        }
        order = std::move(reordered);
        if (!simulate_order())
            throw EmbeddingOverflow("insertion order admits no consistent port line");
    }

    auto alive_after = [&](int v, int s) {
        for (int w : adj[v])
            if (pos[w] > s) return true;
        return false;
    };

    BuildState st;
    st.cluster_sites.resize(g.n);
    st.port_col.assign(g.n, -1);
    place_site(st, order[0], 0, 0, 0);
    st.port_col[order[0]] = 0;
    st.line = {order[0]};
    st.bottom = 0;

    for (int i = 1; i < g.n; i++) {
        int vi = order[i];
        const SimStep& sim = steps[i - 1];
        bool i_alive = alive_after(vi, i);
        std::vector<bool> target_alive;
        for (int t : sim.targets) target_alive.push_back(alive_after(t, i));

        int q1 = sim.targets.empty() ? 0 : st.port_col[sim.targets.front()];
        std::optional<BuildState> done;
        StepPlan chosen;
        for (int grow = 1; grow <= 2 && !done; grow++) {
            for (int shift = 0; shift <= grow && !done; shift++) {
                std::vector<int> port_options{-1};
                if (i_alive) {
                    port_options.clear();
                    int span = -(st.bottom - grow);
                    if (sim.targets.empty()) {
                        for (int p = 0; p <= span; p++) port_options.push_back(p);
                    } else if (sim.targets.size() == 1 && sim.left) {
                        for (int p = q1 - 2; p <= q1 + grow - 2; p++) port_options.push_back(p);
                    } else {
                        for (int p = q1; p <= span; p++) port_options.push_back(p);
                    }
                }
                for (int p : port_options) {
                    StepPlan plan{grow, shift, p, sim.left, sim.gap};
                    auto res =
                        try_insertion(st, g, vi, sim.targets, i_alive, target_alive, plan);
                    if (res) {
                        done = std::move(res);
                        chosen = plan;
                        break;
                    }
                }
            }
        }
        if (!done) throw EmbeddingOverflow("no feasible placement for vertex " +
                                           std::to_string(vi));
        st = std::move(*done);

        InsertionRecord rec;
        rec.vertex = vi;
        rec.attach_count = (int)sim.targets.size();
        rec.growth = chosen.grow;
        rec.side_after = -st.bottom;
        for (int v : st.line) rec.port_columns.push_back(st.port_col[v]);
        out.trace.push_back(rec);
    }

    int side = -st.bottom;
    if (side > 2 * (g.n - 1)) throw EmbeddingOverflow("side bound exceeded");
    if ((int)st.sites.size() > 2 * g.n * g.n) throw EmbeddingOverflow("site bound exceeded");

    out.side = side;
    out.sites = std::move(st.sites);
    out.links = std::move(st.links);
    for (auto& s : out.sites) s.at.r -= st.bottom;
    for (auto& l : out.links) {
        l.a.r -= st.bottom;
        l.b.r -= st.bottom;
    }
    return out;
}

LayoutStats layout_stats(const ClusterLayout& layout) {
    LayoutStats s;
    s.side = layout.side;
    s.sites = (int)layout.sites.size();
    std::map<int, int> per;
    for (const auto& sp : layout.sites) per[sp.cluster]++;
    s.clusters = (int)per.size();
    for (auto& [c, k] : per) s.max_cluster_size = std::max(s.max_cluster_size, k);
    return s;
}

ClusterModel to_cluster_model(const ClusterLayout& layout) {
    ClusterModel cm;
    cm.clusters.resize(layout.n);
    std::map<LatticeSite, std::pair<int, int>> local;  // site -> (cluster, spin)
    for (const auto& sp : layout.sites) {
        auto& cl = cm.clusters[sp.cluster];
        local[sp.at] = {sp.cluster, cl.size};
        cl.size++;
    }
    for (auto& cl : cm.clusters) {
        if (cl.size == 0) throw InvalidGraph("layout misses a cluster");
        cl.tau.assign(cl.size, 1);
    }
    for (const auto& lk : layout.links) {
        auto [ca, ia] = local.at(lk.a);
        auto [cb, ib] = local.at(lk.b);
        if (lk.ferro) {
            if (ca != cb) throw InvalidGraph("ferro link spans clusters");
            cm.clusters[ca].tree.push_back({ia, ib, 1.0});
        } else {
            if (ca == cb) throw InvalidGraph("graph link inside one cluster");
            cm.links.push_back({ca, ia, cb, ib, -1.0});
        }
    }
    validate(cm);
    return cm;
}

}  // namespace mislat
