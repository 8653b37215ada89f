#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memc/instance.hpp"

namespace memc {

// Bijection between (vertex, terminal) pairs and flat variable indices.
// Full mode indexes every vertex; reduced mode fixes each terminal to itself
// and indexes only non-terminal vertices (fewer variables, same optima).
// Iteration order: vertex ascending, then terminal in instance order.
class VariableIndex {
public:
    static VariableIndex full(const MulticutInstance& instance);
    static VariableIndex reduced(const MulticutInstance& instance);

    int size() const { return static_cast<int>(vertices_.size()) * k(); }
    int k() const { return static_cast<int>(terminals_.size()); }
    const std::vector<int>& terminals() const { return terminals_; }
    const std::vector<int>& vertices() const { return vertices_; }  // indexed vertices
    int num_instance_vertices() const { return num_instance_vertices_; }
    bool is_reduced() const { return reduced_; }

    int index_of(int vertex, int terminal_pos) const;
    // flat index -> (vertex id, terminal id)
    std::pair<int, int> vertex_terminal(int flat) const;

private:
    std::vector<int> vertices_;
    std::vector<int> terminals_;
    std::vector<int> vertex_pos_;  // vertex id -> position in vertices_, or -1
    int num_instance_vertices_ = 0;
    bool reduced_ = false;
};

struct QuboTerm {
    int i = 0;
    int j = 0;  // i <= j; i == j holds the linear coefficient
    double q = 0.0;
};

// Upper-triangular QUBO with an explicit scalar constant:
//   E(x) = constant + sum_{i<=j} Q_ij x_i x_j.
// Terms are kept sorted ascending by (i, j) and energies accumulate in that
// order, so evaluation is reproducible bit for bit.
class QuboModel {
public:
    QuboModel(int size, std::vector<QuboTerm> terms, double constant, double alpha,
              std::optional<VariableIndex> index = std::nullopt);

    static QuboModel from_coefficients(int size, std::vector<QuboTerm> terms,
                                       double constant = 0.0);

    int size() const { return size_; }
    double constant() const { return constant_; }
    double penalty_weight() const { return alpha_; }
    const std::vector<QuboTerm>& terms() const { return terms_; }
    bool has_index() const { return index_.has_value(); }
    const VariableIndex& index() const;

    double energy(std::span<const std::uint8_t> bits) const;
    double coefficient(int i, int j) const;

    // Row data for O(deg) single-flip energy deltas.
    const std::vector<double>& linear() const { return linear_; }
    const std::vector<std::vector<std::pair<int, double>>>& neighbors() const {
        return neighbors_;
    }
    // Energy change from flipping bit i in state bits.
    double flip_delta(std::span<const std::uint8_t> bits, int i) const;

    // Export format: header "qubo <N> <constant> <alpha>", then one
    // "<i> <j> <coefficient>" line per nonzero, ascending (i, j).
    void write(std::ostream& out) const;

private:
    int size_;
    std::vector<QuboTerm> terms_;
    double constant_;
    double alpha_;
    std::optional<VariableIndex> index_;
    std::vector<double> linear_;
    std::vector<std::vector<std::pair<int, double>>> neighbors_;
};

// Ising form E(z) = sum_{i<j} J_ij z_i z_j + sum_i h_i z_i with constant
// offset chosen so that ising_energy(z) + offset == qubo_energy(x) under
// x_i = (1 - z_i) / 2. Doubles as the diagonal cost Hamiltonian: basis
// state |x> has eigenvalue qubo_energy(x).
struct IsingTerm {
    int i = 0;
    int j = 0;  // i < j
    double coupling = 0.0;
};

class IsingModel {
public:
    IsingModel(int size, std::vector<IsingTerm> couplings, std::vector<double> fields,
               double offset);

    int size() const { return size_; }
    const std::vector<IsingTerm>& couplings() const { return couplings_; }
    const std::vector<double>& fields() const { return fields_; }
    double offset() const { return offset_; }

    double energy(std::span<const std::int8_t> spins) const;  // spins in {-1,+1}

private:
    int size_;
    std::vector<IsingTerm> couplings_;
    std::vector<double> fields_;
    double offset_;
};

// Realizes the penalty Hamiltonian
//   alpha * [ sum_u (1 - sum_t x_{u,t})^2 + sum_{t != t'} x_{t,t'} ]
//   + sum_{{u,v}} sum_{t != t'} C({u,v}) x_{u,t} x_{v,t'}
// with the per-vertex constants folded into QuboModel::constant.
// Default alpha = 1 + total edge cost, which makes any constraint violation
// cost more than the whole edge budget.
QuboModel build_qubo(const MulticutInstance& instance,
                     std::optional<double> penalty_weight = std::nullopt,
                     bool reduced = false);

IsingModel to_ising(const QuboModel& model);

double qubo_energy(const QuboModel& model, std::span<const std::uint8_t> bits);

struct DecodeViolation {
    enum class Kind { Unassigned, MultipleTerminals, TerminalMisassigned };
    int vertex = 0;
    Kind kind = Kind::Unassigned;
};

// Result of reading a bitstring back as a vertex partition. Infeasibility is
// a value: `assignment` is empty and `violations` names each offending vertex.
struct DecodeResult {
    std::optional<std::vector<int>> assignment;  // vertex id -> terminal id
    std::vector<DecodeViolation> violations;
    bool feasible() const { return assignment.has_value(); }
};

DecodeResult decode_bitstring(const VariableIndex& index, std::span<const std::uint8_t> bits);

// Visits every bitstring of the model exactly once (Gray-code walk, one bit
// flip per step) with its energy. Guarded to N <= 26.
void for_each_energy(const QuboModel& model,
                     const std::function<void(const std::vector<std::uint8_t>&, double)>& fn);

std::vector<std::uint8_t> bits_from_basis_index(std::uint64_t b, int n);
std::uint64_t basis_index_from_bits(std::span<const std::uint8_t> bits);

}  // namespace memc
