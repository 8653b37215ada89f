#pragma once

#include <cstdint>

#include "memc/instance.hpp"
#include "memc/qubo.hpp"
#include "memc/solver_report.hpp"

namespace memc {

struct AnnealSchedule {
    enum class Cooling { Geometric, Linear };

    double initial_temperature = 10.0;
    double final_temperature = 1e-2;
    int sweeps = 1000;
    Cooling cooling = Cooling::Geometric;

    // T0 = total edge cost (one sweep can undo any single cut decision),
    // Tf = 1e-2, geometric, 1000 sweeps.
    static AnnealSchedule defaults_for(const MulticutInstance& instance);

    void validate() const;
    double temperature(int sweep) const;
};

// Exhaustive minimum over all 2^N bitstrings (N <= 26). Ties resolve to the
// lexicographically smallest bitstring.
SolverReport brute_force_qubo(const QuboModel& model);

// Exhaustive minimum over all k^(|V|-k) terminal assignments.
CutSolution brute_force_partition(const MulticutInstance& instance);

// k = 2 exact minimum cut via shortest-augmenting-path max-flow; the cut is
// read off the source-side reachable set of the residual graph.
CutSolution min_cut_k2(const MulticutInstance& instance);

// Isolation heuristic: one minimum isolating cut per terminal (max-flow to a
// super-sink over the other terminals), keep the union of all but the most
// expensive, then prune edges whose restoration keeps terminals separated.
// Cost is within (2 - 2/k) of optimal.
CutSolution greedy_isolation(const MulticutInstance& instance);

// num_reads independent restarts of single-bit Metropolis sweeps over random
// variable permutations; energy is tracked through O(deg) flip deltas. Fully
// deterministic for a fixed seed; read r uses a generator derived from
// (seed, r), so reads can run in any order or in parallel.
SolverReport simulated_annealing(const QuboModel& model, const AnnealSchedule& schedule,
                                 int num_reads, std::uint64_t seed);

}  // namespace memc
