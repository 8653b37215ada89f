#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "memc/optim.hpp"
#include "memc/qubo.hpp"
#include "memc/solver_report.hpp"

namespace memc {

// Enumerated photon-number basis for M modes carrying exactly P photons,
// ordered lexicographically descending in the occupation vector. Size is
// C(M+P-1, P); construction fails with a capacity error past 2e6 states.
class FockBasis {
public:
    FockBasis(int modes, int photons);

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    std::size_t size() const { return size_; }

    std::span<const int> occupation(std::size_t index) const;
    std::size_t index_of(std::span<const int> occupation) const;

private:
    // completions(m, p): occupation vectors of m trailing modes holding p photons
    std::uint64_t completions(int m, int p) const;

    int modes_;
    int photons_;
    std::size_t size_;
    std::vector<int> flat_;                  // size_ * modes_, row-major
    std::vector<std::uint64_t> choose_;      // Pascal table, (modes+photons)^2 packed
    int choose_stride_;
};

struct FockState {
    std::shared_ptr<const FockBasis> basis;
    std::vector<std::complex<double>> amplitudes;

    double norm_squared() const;
};

FockState fock_basis_state(std::shared_ptr<const FockBasis> basis,
                           std::span<const int> occupation);

// Beam splitter on modes (p, q); mixes creation operators as
//   a_p+ -> cos(theta) a_p+ + e^{-i phi} sin(theta) a_q+
//   a_q+ -> -e^{i phi} sin(theta) a_p+ + cos(theta) a_q+
// so the one-photon sector reproduces the 2x2 mode matrix
//   [ cos(theta)            -e^{i phi} sin(theta) ]
//   [ e^{-i phi} sin(theta)  cos(theta)           ].
// Couples only states sharing occupations outside {p, q}; each photon-count
// block is a (N+1)x(N+1) unitary computed once per call.
void apply_beam_splitter(FockState& state, int p, int q, double theta, double phi);

// amp(n) *= exp(i phi n_j)
void apply_phase_shifter(FockState& state, int mode, double phi);

struct Gate {
    enum class Type { BeamSplitter, PhaseShifter };
    Type type = Type::BeamSplitter;
    int mode_a = 0;
    int mode_b = 0;      // unused for phase shifters
    int theta_param = -1;  // parameter slot (BS only)
    int phi_param = -1;    // parameter slot
};

// Ordered gate list with a flat parameter registry; every angle is free and
// owns exactly one slot, assigned in gate insertion order.
class InterferometerCircuit {
public:
    explicit InterferometerCircuit(int modes);

    int modes() const { return modes_; }
    const std::vector<Gate>& gates() const { return gates_; }
    int parameter_count() const { return parameter_count_; }

    void add_beam_splitter(int p, int q);
    void add_phase_shifter(int mode);

    // Text dump: header "lo <M>", then "bs <p> <q> <theta> <phi>" and
    // "ps <j> <phi>" lines with the resolved angles.
    void write(std::ostream& out, std::span<const double> params) const;

private:
    int modes_;
    std::vector<Gate> gates_;
    int parameter_count_ = 0;
};

// Rectangular mesh: M layers of beam splitters on alternating even/odd mode
// pairs (M(M-1)/2 in total), then one phase shifter per mode. Parameter count
// M(M-1) + M.
InterferometerCircuit build_generic_interferometer(int modes);

FockState run_circuit(const InterferometerCircuit& circuit, std::span<const int> input_occupation,
                      std::span<const double> params);

// x_i = n_i mod 2
std::vector<std::uint8_t> parity_decode(std::span<const int> occupation);

// Shot histogram over basis indices, deterministic per seed.
std::map<std::size_t, int> sample_fock_state(const FockState& state, int shots,
                                             std::uint64_t seed);

// Exact objective: sum over the full output distribution of
// p(n) * qubo_energy(parity(n)). Requires one mode per QUBO variable.
double photonic_expectation(const QuboModel& model, const InterferometerCircuit& circuit,
                            std::span<const int> input_occupation,
                            std::span<const double> params);

// Shot-based estimate of the same quantity; converges to the exact value.
double photonic_expectation_shots(const QuboModel& model, const InterferometerCircuit& circuit,
                                  std::span<const int> input_occupation,
                                  std::span<const double> params, int shots, std::uint64_t seed);

// One photon in each of the first P modes, P = number of one-hot vertices of
// the encoding. Feasible bitstrings have weight P, and parity conservation
// forces decoded weight = P (mod 2), so feasible strings stay reachable.
std::vector<int> default_input_occupation(const QuboModel& model);

struct PhotonicConfig {
    int max_evaluations = 1500;
    double tolerance = 1e-8;
    int final_shots = 10000;
    bool shot_objective = false;  // default trains on the exact expectation
    int objective_shots = 10000;
};

// Generic interferometer over all circuit phases, Nelder-Mead from uniform
// [0, 2pi) seeded angles; the report carries the best feasible decoded
// bitstring among final_shots samples at the optimum.
SolverReport photonic_optimize(const QuboModel& model, const PhotonicConfig& config,
                               std::uint64_t seed, OptimizerTrace* trace_out = nullptr);

}  // namespace memc
