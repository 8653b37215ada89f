#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memc/instance.hpp"

namespace memc {

// Uniform result record across backends. best_energy always equals the QUBO
// energy of best_bitstring; best_cut is present iff the bitstring decodes to
// a feasible partition, in which case its cut_cost equals best_energy.
//
// wall_seconds is measured but deliberately left out of to_json(): serialized
// reports are byte-stable across reruns with the same seed, timing travels
// separately (see the bench metadata sidecar).
struct SolverReport {
    std::string backend;
    std::vector<std::uint8_t> best_bitstring;
    double best_energy = 0.0;
    std::optional<CutSolution> best_cut;
    std::int64_t samples_evaluated = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    bool converged = true;

    // filled by backends that sample a distribution at their final point
    std::optional<double> optimal_sampling_probability;
    // filled by the variational backends
    std::optional<double> expectation;
    std::optional<std::vector<double>> best_params;

    std::string to_json() const;
    std::string to_text() const;
};

// (energy, lexicographic bitstring) ordering used for every tie-break.
bool better_result(double energy_a, const std::vector<std::uint8_t>& bits_a, double energy_b,
                   const std::vector<std::uint8_t>& bits_b);

}  // namespace memc
