#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mislat/graph.hpp"
#include "mislat/ising.hpp"

namespace mislat {

// Exhaustive Ising ground-state data. Configs are complete and sorted by
// their bit encoding (bit i set <=> s_i = -1), so results are reproducible.
struct GroundSolution {
    double ground_energy = 0.0;
    std::vector<SpinConfig> ground_configs;
    double first_excited = 0.0;  // energy of lowest distinct level above ground
    bool flat = false;           // spectrum has a single level
    double gap() const { return flat ? 0.0 : first_excited - ground_energy; }
};

struct OracleBudget {
    int max_spins = 24;    // ising_ground enumeration cap
    int max_vertices = 40; // mis_exact branch-and-bound cap
    int max_enumerate = 20; // all-maximum-sets enumeration cap
};

// Exhaustive enumeration of all 2^n configurations. Energies use exact
// integer arithmetic whenever all couplings/fields/constant are integral
// multiples of 2^-20; otherwise floating point with 1e-12 relative
// degeneracy tolerance. `blocks` partitions the enumeration (result is
// partition-independent; exposed for the associativity property test).
GroundSolution ising_ground(const IsingInstance& inst,
                            const OracleBudget& budget = {},
                            int blocks = 1);

struct MisResult {
    int size = 0;
    // All maximum independent sets (each sorted ascending), present only
    // when enumeration was requested and n <= budget.max_enumerate.
    std::vector<std::vector<int>> sets;
    // One witness maximum independent set (always present for n >= 1).
    std::vector<int> witness;
};

struct MisOptions {
    bool enumerate_all = false;
    // Clamps: vertices forced into / out of the independent set. Forcing
    // adjacent vertices in yields size -1 (infeasible).
    std::vector<int> forced_in;
    std::vector<int> forced_out;
};

// Exact MIS by branch and bound with degree reductions. Handles clamps so
// certification can probe conditional optima without re-encoding graphs.
MisResult mis_exact(const Graph& g, const MisOptions& opts = {},
                    const OracleBudget& budget = {});

// Reference implementation: direct scan of all 2^n subsets (n <= 26).
// Exists to cross-check the branch-and-bound solver.
MisResult mis_exhaustive(const Graph& g, bool enumerate_all = false);

}  // namespace mislat
