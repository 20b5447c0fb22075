#include "mislat/ising.hpp"

#include <cmath>
#include <string>

#include "mislat/errors.hpp"

namespace mislat {

void validate(const IsingInstance& inst) {
    if (inst.spins < 0) throw ConfigError("negative spin count");
    if (static_cast<int>(inst.fields.size()) != inst.spins)
        throw ConfigError("field count does not match spin count");
    if (inst.threshold <= 0) throw ThresholdViolation("threshold must be positive");
    for (const auto& c : inst.couplings) {
        if (c.i == c.k) throw ConfigError("self-coupling at spin " + std::to_string(c.i));
        if (c.i < 0 || c.k < 0 || c.i >= inst.spins || c.k >= inst.spins)
            throw ConfigError("coupling index out of range");
        if (std::abs(c.j) < inst.threshold)
            throw ThresholdViolation("|J| = " + std::to_string(std::abs(c.j)) +
                                     " below threshold " + std::to_string(inst.threshold));
    }
}

double energy(const IsingInstance& inst, const SpinConfig& config) {
    if (static_cast<int>(config.size()) != inst.spins)
        throw ConfigError("config length does not match spin count");
    double e = inst.constant;
    for (const auto& c : inst.couplings) e -= c.j * config[c.i] * config[c.k];
    for (int i = 0; i < inst.spins; i++) e -= inst.fields[i] * config[i];
    return e;
}

IsingInstance mis_to_ising(const Graph& g,
                           const std::vector<double>& edge_couplings,
                           double threshold) {
    validate(g);
    if (threshold <= 0) throw ThresholdViolation("threshold must be positive");
    if (edge_couplings.size() != g.edges.size())
        throw ConfigError("need one coupling per edge");
    IsingInstance inst;
    inst.spins = g.n;
    inst.threshold = threshold;
    inst.fields.assign(g.n, 0.0);
    for (size_t e = 0; e < g.edges.size(); e++) {
        double j = edge_couplings[e];
        if (j >= 0)
            throw SignViolation("coupling on edge (" + std::to_string(g.edges[e].first) +
                                "," + std::to_string(g.edges[e].second) +
                                ") must be antiferromagnetic (negative)");
        if (-j < threshold)
            throw ThresholdViolation("|J| on edge (" + std::to_string(g.edges[e].first) +
                                     "," + std::to_string(g.edges[e].second) +
                                     ") below threshold");
        auto [u, v] = g.edges[e];
        inst.couplings.push_back({u, v, j});
        // Energy convention is E = -sum J s s - sum h s; the antiferromagnetic
        // penalty needs h_i = -sum_k J_ik so empty-set energy is the floor.
        inst.fields[u] -= j;
        inst.fields[v] -= j;
    }
    // Cardinality perturbation: shift every field by -threshold so larger
    // independent sets (more spins at -1) win; gap stays >= 2*threshold.
    for (int i = 0; i < g.n; i++) inst.fields[i] -= threshold;
    return inst;
}

IsingInstance mis_to_ising(const Graph& g, double threshold) {
    return mis_to_ising(g, std::vector<double>(g.edges.size(), -threshold), threshold);
}

std::vector<int> decode(const SpinConfig& config) {
    std::vector<int> in_set;
    for (size_t i = 0; i < config.size(); i++)
        if (config[i] == -1) in_set.push_back(static_cast<int>(i));
    return in_set;
}

}  // namespace mislat
