#include "mislat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mislat/errors.hpp"

namespace mislat {

namespace {

// Inputs whose couplings/fields are integral multiples of 2^-20 are
// evaluated in scaled 64-bit integers so degeneracy detection is exact.
constexpr double kExactScale = 1048576.0;  // 2^20
constexpr double kFloatTol = 1e-12;

bool scaled_integral(double x, long long& out) {
    double y = x * kExactScale;
    if (std::abs(y) > 4.0e12) return false;  // keep energy sums far from overflow
    double r = std::llround(y);
    if (std::abs(y - r) > 1e-9 * std::max(1.0, std::abs(y))) return false;
    out = static_cast<long long>(r);
    return true;
}

struct SpinEnv {
    int n;
    std::vector<std::vector<std::pair<int, double>>> nbrs;  // (other spin, J)
    std::vector<double> fields;
    double constant;
};

SpinConfig bits_to_config(std::uint32_t bits, int n) {
    SpinConfig s(n);
    for (int i = 0; i < n; i++) s[i] = (bits >> i & 1) ? -1 : 1;
    return s;
}

// Gray-code sweep over [lo, lo + 2^k) (low k bits vary), invoking fn on
// every configuration. Incremental single-flip updates keep it O(deg).
template <typename Energy, typename Fn>
void sweep_block(const SpinEnv& env, const std::vector<Energy>& js,
                 const std::vector<Energy>& hs, std::uint32_t lo, int k, Fn&& fn) {
    std::vector<int> s(env.n);
    std::uint32_t bits = lo;
    for (int i = 0; i < env.n; i++) s[i] = (bits >> i & 1) ? -1 : 1;
    // local[i] = sum_k J_ik s_k, in the same arithmetic as Energy
    std::vector<Energy> local(env.n, Energy(0));
    Energy e = Energy(0);
    std::vector<std::vector<std::pair<int, int>>> nbr_ix(env.n);
    {
        int edge = 0;
        for (int i = 0; i < env.n; i++)
            for (auto [kk, j] : env.nbrs[i]) {
                (void)j;
                if (kk > i) {
                    nbr_ix[i].push_back({kk, edge});
                    nbr_ix[kk].push_back({i, edge});
                    edge++;
                }
            }
        for (int i = 0; i < env.n; i++)
            for (auto [kk, ei] : nbr_ix[i]) local[i] += js[ei] * Energy(s[kk]);
        for (int i = 0; i < env.n; i++) {
            e -= hs[i] * Energy(s[i]);
            for (auto [kk, ei] : nbr_ix[i])
                if (kk > i) e -= js[ei] * Energy(s[i]) * Energy(s[kk]);
        }
    }
    std::uint64_t count = 1ULL << k;
    fn(bits, e);
    for (std::uint64_t t = 1; t < count; t++) {
        int b = std::countr_zero(t);
        // flip spin b: dE = 2 s_b (local_b + h_b)
        e += Energy(2 * s[b]) * (local[b] + hs[b]);
        for (auto [kk, ei] : nbr_ix[b]) local[kk] -= js[ei] * Energy(2 * s[b]);
        s[b] = -s[b];
        bits ^= 1u << b;
        fn(bits, e);
    }
}

template <typename Energy>
struct GroundScan {
    Energy best;
    Energy second;  // lowest energy strictly above best (by tolerance)
    bool has_second = false;
    std::vector<std::uint32_t> configs;
    Energy tol;

    explicit GroundScan(Energy first_energy, Energy tolerance)
        : best(first_energy), second(first_energy), tol(tolerance) {}

    void feed(std::uint32_t bits, Energy e) {
        if (e + tol < best) {
            if (best <= second || !has_second) {
                second = best;
                has_second = true;
            }
            best = e;
            configs.clear();
            configs.push_back(bits);
        } else if (e <= best + tol) {
            configs.push_back(bits);
        } else if (!has_second || e < second) {
            second = e;
            has_second = true;
        }
    }
};

}  // namespace

GroundSolution ising_ground(const IsingInstance& inst, const OracleBudget& budget,
                            int blocks) {
    validate(inst);
    if (inst.spins > budget.max_spins)
        throw BudgetExceeded("ising_ground: " + std::to_string(inst.spins) +
                             " spins exceeds budget " + std::to_string(budget.max_spins));
    int n = inst.spins;
    if (blocks < 1 || (blocks & (blocks - 1)) != 0)
        throw ConfigError("blocks must be a power of two");
    while ((1LL << n) < blocks) blocks >>= 1;

    SpinEnv env;
    env.n = n;
    env.constant = inst.constant;
    env.fields = inst.fields;
    env.nbrs.resize(n);
    for (const auto& c : inst.couplings) {
        env.nbrs[c.i].push_back({c.k, c.j});
        env.nbrs[c.k].push_back({c.i, c.j});
    }

    // Decide arithmetic once per instance.
    bool exact = true;
    std::vector<long long> js_i, hs_i;
    std::vector<double> js_f, hs_f;
    {
        long long v;
        for (int i = 0; i < n && exact; i++)
            for (auto [kk, j] : env.nbrs[i])
                if (kk > i) exact = exact && scaled_integral(j, v);
        for (int i = 0; i < n && exact; i++) exact = exact && scaled_integral(inst.fields[i], v);
    }
    for (int i = 0; i < n; i++)
        for (auto [kk, j] : env.nbrs[i])
            if (kk > i) {
                long long v = 0;
                if (exact) scaled_integral(j, v);
                js_i.push_back(v);
                js_f.push_back(j);
            }
    for (int i = 0; i < n; i++) {
        long long v = 0;
        if (exact) scaled_integral(inst.fields[i], v);
        hs_i.push_back(v);
        hs_f.push_back(inst.fields[i]);
    }

    int k_low = n;
    {
        int b = blocks;
        while (b > 1) {
            b >>= 1;
            k_low--;
        }
    }

    GroundSolution out;
    std::vector<std::uint32_t> ground_bits;
    if (exact) {
        GroundScan<long long> scan(0, 0);
        bool seeded = false;
        for (int b = 0; b < blocks; b++) {
            std::uint32_t lo = static_cast<std::uint32_t>(b) << k_low;
            sweep_block<long long>(env, js_i, hs_i, lo, k_low, [&](std::uint32_t bits, long long e) {
                if (!seeded) {
                    scan.best = e;
                    scan.configs.push_back(bits);
                    seeded = true;
                } else {
                    scan.feed(bits, e);
                }
            });
        }
        out.ground_energy = static_cast<double>(scan.best) / kExactScale + inst.constant;
        out.flat = !scan.has_second;
        out.first_excited =
            scan.has_second ? static_cast<double>(scan.second) / kExactScale + inst.constant
                            : out.ground_energy;
        ground_bits = std::move(scan.configs);
    } else {
        // Pass 1: exact minimum. Pass 2: degeneracy within relative tolerance.
        double e0 = 0.0;
        bool seeded = false;
        for (int b = 0; b < blocks; b++) {
            std::uint32_t lo = static_cast<std::uint32_t>(b) << k_low;
            sweep_block<double>(env, js_f, hs_f, lo, k_low, [&](std::uint32_t, double e) {
                if (!seeded || e < e0) {
                    e0 = e;
                    seeded = true;
                }
            });
        }
        double tol = kFloatTol * std::max(1.0, std::abs(e0));
        double e1 = 0.0;
        bool has_e1 = false;
        for (int b = 0; b < blocks; b++) {
            std::uint32_t lo = static_cast<std::uint32_t>(b) << k_low;
            sweep_block<double>(env, js_f, hs_f, lo, k_low, [&](std::uint32_t bits, double e) {
                if (e <= e0 + tol) {
                    ground_bits.push_back(bits);
                } else if (!has_e1 || e < e1) {
                    e1 = e;
                    has_e1 = true;
                }
            });
        }
        out.ground_energy = e0 + inst.constant;
        out.flat = !has_e1;
        out.first_excited = has_e1 ? e1 + inst.constant : out.ground_energy;
    }

    if (ground_bits.size() > (1u << 20))
        throw BudgetExceeded("ising_ground: ground degeneracy exceeds 2^20 configs");
    std::sort(ground_bits.begin(), ground_bits.end());
    out.ground_configs.reserve(ground_bits.size());
    for (auto bits : ground_bits) out.ground_configs.push_back(bits_to_config(bits, n));
    return out;
}

// ---------------------------------------------------------------------------
// MIS oracles
// ---------------------------------------------------------------------------

namespace {

struct BitGraph {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> adj;  // row-major, n rows of `words` words

    const std::uint64_t* row(int v) const { return &adj[static_cast<size_t>(v) * words]; }
    std::uint64_t* row(int v) { return &adj[static_cast<size_t>(v) * words]; }
};

BitGraph to_bitgraph(const Graph& g) {
    BitGraph bg;
    bg.n = g.n;
    bg.words = (g.n + 63) / 64;
    bg.adj.assign(static_cast<size_t>(g.n) * bg.words, 0);
    for (auto [u, v] : g.edges) {
        bg.row(u)[v >> 6] |= 1ULL << (v & 63);
        bg.row(v)[u >> 6] |= 1ULL << (u & 63);
    }
    return bg;
}

struct Mask {
    std::vector<std::uint64_t> w;
    explicit Mask(int words = 0) : w(words, 0) {}
    bool test(int i) const { return w[i >> 6] >> (i & 63) & 1; }
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (auto x : w) if (x) return true;
        return false;
    }
};

struct BnB {
    const BitGraph& g;
    int best = -1;
    Mask best_set;
    Mask cur_set;

    explicit BnB(const BitGraph& graph) : g(graph), best_set(graph.words), cur_set(graph.words) {}

    int degree_in(int v, const Mask& p) const {
        int d = 0;
        const std::uint64_t* r = g.row(v);
        for (int i = 0; i < g.words; i++) d += std::popcount(r[i] & p.w[i]);
        return d;
    }

    void take(Mask& p, int v) {
        cur_set.set(v);
        p.reset(v);
        const std::uint64_t* r = g.row(v);
        for (int i = 0; i < g.words; i++) p.w[i] &= ~r[i];
    }

    // alpha of a path/cycle-only remainder (max degree <= 2), greedily
    // taking alternate vertices; exact for disjoint paths and cycles.
    void solve_paths(Mask p, int size) {
        while (true) {
            int pick = -1, pick_deg = 3;
            for (int v = 0; v < g.n; v++) {
                if (!p.test(v)) continue;
                int d = degree_in(v, p);
                if (d < pick_deg) {
                    pick = v;
                    pick_deg = d;
                    if (d == 0) break;
                }
            }
            if (pick < 0) break;
            take(p, pick);
            size++;
        }
        if (size > best) {
            best = size;
            best_set = cur_set;
        }
        // restore cur_set bits added here is handled by caller copies
    }

    void solve(Mask p, int size) {
        Mask saved_cur = cur_set;
        // reductions: isolated and degree-1 vertices are always safe to take
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < g.n; v++) {
                if (!p.test(v)) continue;
                int d = degree_in(v, p);
                if (d == 0) {
                    take(p, v);
                    size++;
                    changed = true;
                } else if (d == 1) {
                    take(p, v);
                    size++;
                    changed = true;
                }
            }
        }
        int remaining = p.count();
        if (size + remaining <= best) {
            cur_set = saved_cur;
            return;
        }
        if (remaining == 0) {
            if (size > best) {
                best = size;
                best_set = cur_set;
            }
            cur_set = saved_cur;
            return;
        }
        // pick max-degree vertex (lowest id tie-break)
        int pick = -1, pick_deg = -1;
        for (int v = 0; v < g.n; v++) {
            if (!p.test(v)) continue;
            int d = degree_in(v, p);
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        if (pick_deg <= 2) {
            Mask p2 = p;
            solve_paths(std::move(p2), size);
            cur_set = saved_cur;
            return;
        }
        // branch: pick in
        {
            Mask p_in = p;
            Mask save2 = cur_set;
            take(p_in, pick);
            solve(std::move(p_in), size + 1);
            cur_set = save2;
        }
        // branch: pick out
        {
            Mask p_out = p;
            p_out.reset(pick);
            solve(std::move(p_out), size);
        }
        cur_set = saved_cur;
    }
};

}  // namespace

MisResult mis_exhaustive(const Graph& g, bool enumerate_all) {
    validate(g);
    if (g.n > 26) throw BudgetExceeded("mis_exhaustive: n > 26");
    int n = g.n;
    std::vector<std::uint64_t> adj(n, 0);
    for (auto [u, v] : g.edges) {
        adj[u] |= 1ULL << v;
        adj[v] |= 1ULL << u;
    }
    std::uint64_t total = 1ULL << n;
    std::vector<std::uint64_t> indep((total + 63) / 64, 0);
    indep[0] = 1;  // empty set
    int alpha = 0;
    std::uint64_t alpha_mask = 0;
    for (std::uint64_t m = 1; m < total; m++) {
        int v = std::countr_zero(m);
        std::uint64_t rest = m & (m - 1);
        bool ok = (indep[rest >> 6] >> (rest & 63) & 1) && !(adj[v] & rest);
        if (ok) {
            indep[m >> 6] |= 1ULL << (m & 63);
            int c = std::popcount(m);
            if (c > alpha) {
                alpha = c;
                alpha_mask = m;
            }
        }
    }
    MisResult res;
    res.size = alpha;
    for (int i = 0; i < n; i++)
        if (alpha_mask >> i & 1) res.witness.push_back(i);
    if (enumerate_all) {
        for (std::uint64_t m = 0; m < total; m++) {
            if (std::popcount(m) != alpha) continue;
            if (!(indep[m >> 6] >> (m & 63) & 1)) continue;
            std::vector<int> s;
            for (int i = 0; i < n; i++)
                if (m >> i & 1) s.push_back(i);
            res.sets.push_back(std::move(s));
        }
        std::sort(res.sets.begin(), res.sets.end());
    }
    return res;
}

MisResult mis_exact(const Graph& g, const MisOptions& opts, const OracleBudget& budget) {
    validate(g);
    // Apply clamps by surgery: forced_in removes closed neighborhoods,
    // forced_out removes vertices; ids are then mapped back.
    std::vector<char> in(g.n, 0), out(g.n, 0);
    for (int v : opts.forced_in) {
        if (v < 0 || v >= g.n) throw ConfigError("forced_in vertex out of range");
        in[v] = 1;
    }
    for (int v : opts.forced_out) {
        if (v < 0 || v >= g.n) throw ConfigError("forced_out vertex out of range");
        if (in[v]) throw ConfigError("vertex both forced in and out");
        out[v] = 1;
    }
    for (auto [u, v] : g.edges)
        if (in[u] && in[v]) return MisResult{-1, {}, {}};  // infeasible clamp
    auto adj = g.adjacency();
    std::vector<char> removed(g.n, 0);
    int base = 0;
    for (int v = 0; v < g.n; v++) {
        if (in[v]) {
            base++;
            removed[v] = 1;
            for (int u : adj[v]) removed[u] = 1;
        }
        if (out[v]) removed[v] = 1;
    }
    for (int v = 0; v < g.n; v++)
        if (in[v]) removed[v] = 1;

    std::vector<int> keep, back(g.n, -1);
    for (int v = 0; v < g.n; v++)
        if (!removed[v]) {
            back[v] = static_cast<int>(keep.size());
            keep.push_back(v);
        }
    Graph sub(static_cast<int>(keep.size()));
    for (auto [u, v] : g.edges)
        if (back[u] >= 0 && back[v] >= 0) sub.add_edge(back[u], back[v]);

    if (sub.n > budget.max_vertices)
        throw BudgetExceeded("mis_exact: " + std::to_string(sub.n) +
                             " vertices exceeds budget " +
                             std::to_string(budget.max_vertices));

    MisResult res;
    if (opts.enumerate_all) {
        if (sub.n > budget.max_enumerate)
            throw BudgetExceeded("mis_exact: enumeration beyond budget");
        MisResult inner = mis_exhaustive(sub, true);
        res.size = inner.size + base;
        for (auto& s : inner.sets) {
            std::vector<int> mapped;
            for (int v = 0; v < g.n; v++)
                if (in[v]) mapped.push_back(v);
            for (int x : s) mapped.push_back(keep[x]);
            std::sort(mapped.begin(), mapped.end());
            res.sets.push_back(std::move(mapped));
        }
        std::sort(res.sets.begin(), res.sets.end());
        if (!res.sets.empty()) res.witness = res.sets.front();
        return res;
    }

    BitGraph bg = to_bitgraph(sub);
    BnB solver(bg);
    Mask all(bg.words);
    for (int v = 0; v < sub.n; v++) all.set(v);
    solver.solve(all, 0);
    res.size = solver.best + base;
    std::vector<int> w;
    for (int v = 0; v < g.n; v++)
        if (in[v]) w.push_back(v);
    for (int v = 0; v < sub.n; v++)
        if (solver.best_set.test(v)) w.push_back(keep[v]);
    std::sort(w.begin(), w.end());
    res.witness = std::move(w);
    return res;
}

}  // namespace mislat
