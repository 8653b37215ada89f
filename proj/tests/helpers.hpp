#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "memc/instance.hpp"

namespace memc::test {

// Literal evaluation of the penalty Hamiltonian on assignment bits, written
// straight from its definition over (vertex, terminal) pairs. Kept
// independent of build_qubo's coefficient assembly on purpose: it is the
// oracle the QUBO is checked against.
inline double direct_hamiltonian(const MulticutInstance& inst, double alpha,
                                 const std::vector<std::uint8_t>& bits, bool reduced = false) {
    const auto& terminals = inst.terminals();
    const int k = static_cast<int>(terminals.size());
    std::vector<int> indexed;
    for (int v = 0; v < inst.num_vertices(); ++v)
        if (!reduced || !inst.is_terminal(v)) indexed.push_back(v);
    std::vector<int> pos(static_cast<std::size_t>(inst.num_vertices()), -1);
    for (std::size_t i = 0; i < indexed.size(); ++i) pos[static_cast<std::size_t>(indexed[i])] = static_cast<int>(i);

    auto value = [&](int vertex, int terminal) -> double {
        if (reduced && inst.is_terminal(vertex)) return vertex == terminal ? 1.0 : 0.0;
        const int tpos = static_cast<int>(
            std::lower_bound(terminals.begin(), terminals.end(), terminal) - terminals.begin());
        return bits[static_cast<std::size_t>(pos[static_cast<std::size_t>(vertex)] * k + tpos)] ? 1.0
                                                                                                : 0.0;
    };

    double e = 0.0;
    for (int u : indexed) {
        double s = 0.0;
        for (int t : terminals) s += value(u, t);
        e += alpha * (1.0 - s) * (1.0 - s);
    }
    if (!reduced) {
        for (int t : terminals)
            for (int t2 : terminals)
                if (t2 != t) e += alpha * value(t, t2);
    }
    for (const Edge& edge : inst.edges())
        for (int t : terminals)
            for (int t2 : terminals)
                if (t2 != t) e += edge.cost * value(edge.u, t) * value(edge.v, t2);
    return e;
}

// small connected instances for exhaustive cross-checks
inline MulticutInstance random_instance(int vertices, int k, std::uint64_t seed,
                                        double cost_lo = 1.0, double cost_hi = 10.0) {
    const int max_edges = vertices * (vertices - 1) / 2;
    const int edges = std::min(max_edges, vertices + static_cast<int>(seed % 4));
    return generate_random_instance(vertices, edges, k, {cost_lo, cost_hi}, seed);
}

}  // namespace memc::test
