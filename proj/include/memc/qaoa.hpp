#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "memc/optim.hpp"
#include "memc/qubo.hpp"
#include "memc/solver_report.hpp"

namespace memc {

// Dense n-qubit state; basis index b encodes the bitstring with bit i of b
// equal to x_i.
using Statevector = std::vector<std::complex<double>>;

// qubo_energy for every basis bitstring, i.e. the diagonal of the cost
// Hamiltonian.
using EnergyTable = std::vector<double>;

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    int depth() const { return static_cast<int>(gammas.size()); }
    void validate() const;
};

// |+>^n: every amplitude 2^(-n/2). Capacity capped at n <= 24.
Statevector prepare_plus_state(int n);

EnergyTable build_energy_table(const QuboModel& model);

// amp_b *= exp(-i gamma E_b). The cost Hamiltonian is diagonal, so the exact
// phase is applied directly; no gate decomposition.
void apply_cost_layer(Statevector& state, const EnergyTable& energies, double gamma);

// exp(-i beta X) on every qubit, ascending for determinism (the rotations
// commute).
void apply_mixer_layer(Statevector& state, double beta);

// Full ansatz evolution from |+>^n.
Statevector qaoa_state(const EnergyTable& energies, const QaoaParams& params);

double expectation_value(const Statevector& state, const EnergyTable& energies);

double qaoa_expectation(const QuboModel& model, const QaoaParams& params);

// `shots` basis-state draws from |amp|^2, deterministic per seed.
std::map<std::uint64_t, int> sample_state(const Statevector& state, int shots,
                                          std::uint64_t seed);
std::map<std::uint64_t, int> qaoa_sample(const QuboModel& model, const QaoaParams& params,
                                         int shots, std::uint64_t seed);

struct QaoaConfig {
    int depth = 1;
    int max_evaluations = 1000;
    double tolerance = 1e-6;
    int final_shots = 4000;
    double gamma_init = 0.25 * 3.14159265358979323846;  // pi/4
    double beta_init = 0.5 * 3.14159265358979323846;    // pi/2
    // optional explicit start [gamma_1..gamma_p, beta_1..beta_p]; overrides
    // the scalar initializers
    std::optional<std::vector<double>> init_params;
};

// Nelder-Mead over [gamma_1..gamma_p, beta_1..beta_p] in [0, pi]^2p; the
// report carries the lowest-energy bitstring among final_shots samples at the
// optimum. When trace_out is given it receives one entry per expectation
// evaluation.
SolverReport qaoa_optimize(const QuboModel& model, const QaoaConfig& config, std::uint64_t seed,
                           OptimizerTrace* trace_out = nullptr);

struct GridScanResult {
    double gamma = 0.0;
    double beta = 0.0;
    double expectation = 0.0;
    OptimizerTrace trace;
};

// Deterministic p=1 oracle: exhaustive scan of an inclusive points x points
// grid over [0, pi]^2.
GridScanResult qaoa_grid_scan_p1(const QuboModel& model, int points = 64);

}  // namespace memc
