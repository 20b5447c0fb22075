#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mislat/graph.hpp"

namespace mislat {

// Spin values are +1/-1, stored as int8.
using SpinConfig = std::vector<std::int8_t>;

struct Coupling {
    int i, k;
    double j;
    bool operator==(const Coupling&) const = default;
};

// Classical Ising problem: H = -sum J_ik s_i s_k - sum h_i s_i + constant.
// `threshold` is the coupling-strength floor: every |J_ik| >= threshold.
struct IsingInstance {
    int spins = 0;
    std::vector<Coupling> couplings;
    std::vector<double> fields;
    double threshold = 1.0;
    double constant = 0.0;
};

void validate(const IsingInstance& inst);

// Direct evaluation of H at one configuration (constant included).
double energy(const IsingInstance& inst, const SpinConfig& config);

// Build the Ising encoding of MIS on g: couplings J_ik < 0 on edges,
// fields h_i = -sum_k J_ik - threshold. Ground states then decode to
// maximum independent sets, with classical gap >= 2*threshold.
// `edge_couplings` runs parallel to g.edges; when omitted every edge
// gets -threshold.
IsingInstance mis_to_ising(const Graph& g,
                           const std::vector<double>& edge_couplings,
                           double threshold);
IsingInstance mis_to_ising(const Graph& g, double threshold = 1.0);

// Vertices encoded "in the set" carry spin -1.
std::vector<int> decode(const SpinConfig& config);

}  // namespace mislat
