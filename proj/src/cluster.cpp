#include "mislat/cluster.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mislat/errors.hpp"

namespace mislat {

int ClusterModel::total_spins() const {
    int n = 0;
    for (const auto& c : clusters) n += c.size;
    return n;
}

int ClusterModel::offset(int cluster) const {
    int n = 0;
    for (int i = 0; i < cluster; i++) n += clusters[i].size;
    return n;
}

int ClusterModel::flat(int cluster, int alpha) const { return offset(cluster) + alpha; }

namespace {

void check_tree(const Cluster& c, int idx) {
    const std::string where = "cluster " + std::to_string(idx);
    if (c.size <= 0) throw InvalidGraph(where + ": empty cluster");
    if (static_cast<int>(c.tree.size()) != c.size - 1)
        throw TreeViolation(where + ": " + std::to_string(c.tree.size()) + " edges on " +
                            std::to_string(c.size) + " spins is not a tree");
    std::vector<std::vector<int>> adj(c.size);
    for (const auto& e : c.tree) {
        if (e.a < 0 || e.a >= c.size || e.b < 0 || e.b >= c.size || e.a == e.b)
            throw InvalidGraph(where + ": bad intra edge");
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<char> seen(c.size, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                reached++;
                stack.push_back(w);
            }
    }
    if (reached != c.size) throw TreeViolation(where + ": intra edges are disconnected");
}

void check_gauge(const ClusterModel& cm) {
    for (std::size_t i = 0; i < cm.clusters.size(); i++) {
        const auto& c = cm.clusters[i];
        if (static_cast<int>(c.tau.size()) != c.size)
            throw InvalidGraph("cluster " + std::to_string(i) + ": tau size mismatch");
        for (int8_t t : c.tau)
            if (t != 1 && t != -1)
                throw InvalidGraph("cluster " + std::to_string(i) + ": tau must be +-1");
        for (const auto& e : c.tree)
            if (e.j * c.tau[e.a] * c.tau[e.b] <= 0)
                throw GaugeViolation("cluster " + std::to_string(i) + ": intra coupling (" +
                                     std::to_string(e.a) + "," + std::to_string(e.b) +
                                     ") disagrees with gauge");
    }
    std::set<std::pair<int, int>> pairs;
    for (const auto& l : cm.links) {
        int nc = static_cast<int>(cm.clusters.size());
        if (l.ci < 0 || l.ci >= nc || l.ck < 0 || l.ck >= nc || l.ci == l.ck)
            throw InvalidGraph("link joins invalid clusters");
        if (l.ai < 0 || l.ai >= cm.clusters[l.ci].size || l.ak < 0 ||
            l.ak >= cm.clusters[l.ck].size)
            throw InvalidGraph("link endpoint out of range");
        auto key = std::minmax(l.ci, l.ck);
        if (!pairs.insert(key).second)
            throw InvalidGraph("clusters " + std::to_string(key.first) + " and " +
                               std::to_string(key.second) + " joined by more than one link");
        if (l.j * cm.clusters[l.ci].tau[l.ai] * cm.clusters[l.ck].tau[l.ak] >= 0)
            throw GaugeViolation("link (" + std::to_string(l.ci) + "." + std::to_string(l.ai) +
                                 ")-(" + std::to_string(l.ck) + "." + std::to_string(l.ak) +
                                 ") is effectively ferromagnetic");
    }
}

}  // namespace

void validate(const ClusterModel& cm) {
    for (std::size_t i = 0; i < cm.clusters.size(); i++)
        check_tree(cm.clusters[i], static_cast<int>(i));
    check_gauge(cm);
}

IsingInstance build_cluster_hamiltonian(const ClusterModel& cm, double threshold,
                                        FieldVariant variant) {
    validate(cm);
    if (threshold <= 0) throw ThresholdViolation("threshold must be positive");
    IsingInstance inst;
    inst.spins = cm.total_spins();
    inst.threshold = threshold;
    inst.fields.assign(inst.spins, 0.0);

    for (std::size_t i = 0; i < cm.clusters.size(); i++) {
        int base = cm.offset(static_cast<int>(i));
        for (const auto& e : cm.clusters[i].tree) {
            if (std::abs(e.j) < threshold)
                throw ThresholdViolation("intra coupling below threshold");
            inst.couplings.push_back({base + e.a, base + e.b, e.j});
            inst.constant += std::abs(e.j);
        }
    }
    for (const auto& l : cm.links) {
        if (std::abs(l.j) < threshold) throw ThresholdViolation("link below threshold");
        int u = cm.flat(l.ci, l.ai);
        int v = cm.flat(l.ck, l.ak);
        inst.couplings.push_back({u, v, l.j});
        inst.constant += std::abs(l.j);
        // H2 cross terms contribute a field |J| tau on each endpoint
        inst.fields[u] += std::abs(l.j) * cm.clusters[l.ci].tau[l.ai];
        inst.fields[v] += std::abs(l.j) * cm.clusters[l.ck].tau[l.ak];
    }
    for (std::size_t i = 0; i < cm.clusters.size(); i++) {
        const auto& c = cm.clusters[i];
        int base = cm.offset(static_cast<int>(i));
        if (variant == FieldVariant::representative) {
            inst.fields[base] -= 0.5 * threshold * c.tau[0];
        } else {
            for (int a = 0; a < c.size; a++)
                inst.fields[base + a] -= 0.5 * threshold * c.tau[a] / c.size;
        }
    }
    return inst;
}

EnergyBreakdown energy_breakdown(const ClusterModel& cm, double threshold,
                                 const SpinConfig& config, FieldVariant variant) {
    validate(cm);
    if (static_cast<int>(config.size()) != cm.total_spins())
        throw InvalidGraph("config length does not match total spin count");
    EnergyBreakdown out;
    for (std::size_t i = 0; i < cm.clusters.size(); i++) {
        const auto& c = cm.clusters[i];
        int base = cm.offset(static_cast<int>(i));
        for (const auto& e : c.tree)
            out.h1 += std::abs(e.j) *
                      (1.0 - c.tau[e.a] * c.tau[e.b] * config[base + e.a] * config[base + e.b]);
        if (variant == FieldVariant::representative) {
            out.v += 0.5 * threshold * config[base] * c.tau[0];
        } else {
            for (int a = 0; a < c.size; a++)
                out.v += 0.5 * threshold * config[base + a] * c.tau[a] / c.size;
        }
    }
    for (const auto& l : cm.links) {
        int u = cm.flat(l.ci, l.ai);
        int v = cm.flat(l.ck, l.ak);
        out.h2 += std::abs(l.j) * (1.0 - cm.clusters[l.ci].tau[l.ai] * config[u]) *
                  (1.0 - cm.clusters[l.ck].tau[l.ak] * config[v]);
    }
    for (const auto& c : cm.clusters)
        for (const auto& e : c.tree) out.constant += std::abs(e.j);
    for (const auto& l : cm.links) out.constant += std::abs(l.j);
    return out;
}

std::vector<int> decode_cluster(const ClusterModel& cm, const SpinConfig& config) {
    if (static_cast<int>(config.size()) != cm.total_spins())
        throw InvalidGraph("config length does not match total spin count");
    std::vector<int> out;
    for (std::size_t i = 0; i < cm.clusters.size(); i++)
        if (config[cm.offset(static_cast<int>(i))] * cm.clusters[i].tau[0] == -1)
            out.push_back(static_cast<int>(i));
    return out;
}

std::vector<std::vector<int8_t>> infer_tau(const ClusterModel& cm) {
    for (std::size_t i = 0; i < cm.clusters.size(); i++)
        check_tree(cm.clusters[i], static_cast<int>(i));
    std::vector<std::vector<int8_t>> tau;
    for (std::size_t i = 0; i < cm.clusters.size(); i++) {
        const auto& c = cm.clusters[i];
        std::vector<std::vector<std::pair<int, double>>> adj(c.size);
        for (const auto& e : c.tree) {
            if (e.j == 0)
                throw InvalidGraph("cluster " + std::to_string(i) + ": zero intra coupling");
            adj[e.a].push_back({e.b, e.j});
            adj[e.b].push_back({e.a, e.j});
        }
        std::vector<int8_t> t(c.size, 0);
        t[0] = 1;
        std::vector<int> stack{0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, j] : adj[v])
                if (t[w] == 0) {
                    t[w] = static_cast<int8_t>(j > 0 ? t[v] : -t[v]);
                    stack.push_back(w);
                }
        }
        tau.push_back(std::move(t));
    }
    for (const auto& l : cm.links)
        if (l.j * tau[l.ci][l.ai] * tau[l.ck][l.ak] >= 0)
            throw InterClusterSignConflict("link (" + std::to_string(l.ci) + "." +
                                           std::to_string(l.ai) + ")-(" + std::to_string(l.ck) +
                                           "." + std::to_string(l.ak) +
                                           ") cannot be made antiferromagnetic");
    return tau;
}

}  // namespace mislat
