#pragma once

#include <cstdint>
#include <vector>

#include "mislat/ising.hpp"

namespace mislat {

// Coupling between two spins of the same cluster, by local spin index.
struct IntraCoupling {
    int a = 0;
    int b = 0;
    double j = 0.0;
};

// Coupling between spin ai of cluster ci and spin ak of cluster ck.
struct InterCoupling {
    int ci = 0;
    int ai = 0;
    int ck = 0;
    int ak = 0;
    double j = 0.0;
};

// One vertex of the source graph, realised as a tree of physical spins.
// Local index 0 is the representative spin.
struct Cluster {
    int size = 0;
    std::vector<int8_t> tau;          // gauge signs, one per spin
    std::vector<IntraCoupling> tree;  // size-1 edges forming a connected tree
};

// Spin-level model of a graph: one cluster per vertex, at most one
// inter-cluster link per edge of the source graph.
struct ClusterModel {
    std::vector<Cluster> clusters;
    std::vector<InterCoupling> links;

    int total_spins() const;
    int offset(int cluster) const;        // flat index of spin (cluster, 0)
    int flat(int cluster, int alpha) const;
};

enum class FieldVariant {
    representative,  // degeneracy-breaking shift on spin 0 of each cluster
    distributed,     // shift spread over all spins, weighted 1/n_i
};

struct EnergyBreakdown {
    double h1 = 0.0;        // intra-cluster alignment cost, >= 0
    double h2 = 0.0;        // inter-cluster exclusion cost, >= 0
    double v = 0.0;         // cardinality bias
    double constant = 0.0;  // total() minus the bare coupling-and-field sum
    double total() const { return h1 + h2 + v; }
};

// Structural and gauge checks. Throws TreeViolation if some cluster's
// intra edges are not a connected tree, GaugeViolation if a coupling sign
// disagrees with the gauge, InvalidGraph for malformed indices or a
// duplicated cluster-pair link.
void validate(const ClusterModel& cm);

// Flattens the model into an Ising instance whose ground states decode to
// the maximum independent sets of the quotient graph, with gap >= threshold.
// Throws ThresholdViolation if some |J| < threshold, plus validate() errors.
IsingInstance build_cluster_hamiltonian(const ClusterModel& cm, double threshold,
                                        FieldVariant variant = FieldVariant::representative);

// Splits the energy of a config into H1 + H2 + V. The reported constant is
// config-independent and matches the built instance's stored constant.
EnergyBreakdown energy_breakdown(const ClusterModel& cm, double threshold,
                                 const SpinConfig& config,
                                 FieldVariant variant = FieldVariant::representative);

// Vertices whose coarse-grained spin is -1, read off the representatives.
std::vector<int> decode_cluster(const ClusterModel& cm, const SpinConfig& config);

// Gauge signs propagated along each cluster tree from spin 0 (tau = +1).
// Ignores any tau already present. Throws InterClusterSignConflict naming
// the first link the propagated signs make effectively ferromagnetic.
std::vector<std::vector<int8_t>> infer_tau(const ClusterModel& cm);

}  // namespace mislat
