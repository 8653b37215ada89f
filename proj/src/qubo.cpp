#include "memc/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "memc/errors.hpp"

namespace memc {

VariableIndex VariableIndex::full(const MulticutInstance& instance) {
    VariableIndex idx;
    idx.terminals_ = instance.terminals();
    idx.num_instance_vertices_ = instance.num_vertices();
    idx.reduced_ = false;
    idx.vertices_.resize(static_cast<std::size_t>(instance.num_vertices()));
    for (int v = 0; v < instance.num_vertices(); ++v)
        idx.vertices_[static_cast<std::size_t>(v)] = v;
    idx.vertex_pos_ = idx.vertices_;
    return idx;
}

VariableIndex VariableIndex::reduced(const MulticutInstance& instance) {
    VariableIndex idx;
    idx.terminals_ = instance.terminals();
    idx.num_instance_vertices_ = instance.num_vertices();
    idx.reduced_ = true;
    idx.vertex_pos_.assign(static_cast<std::size_t>(instance.num_vertices()), -1);
    for (int v = 0; v < instance.num_vertices(); ++v) {
        if (!instance.is_terminal(v)) {
            idx.vertex_pos_[static_cast<std::size_t>(v)] = static_cast<int>(idx.vertices_.size());
            idx.vertices_.push_back(v);
        }
    }
    return idx;
}

int VariableIndex::index_of(int vertex, int terminal_pos) const {
    int pos = vertex_pos_[static_cast<std::size_t>(vertex)];
    if (pos < 0) throw ValidationError("vertex " + std::to_string(vertex) + " is not indexed");
    return pos * k() + terminal_pos;
}

std::pair<int, int> VariableIndex::vertex_terminal(int flat) const {
    int pos = flat / k();
    int tpos = flat % k();
    return {vertices_[static_cast<std::size_t>(pos)], terminals_[static_cast<std::size_t>(tpos)]};
}

QuboModel::QuboModel(int size, std::vector<QuboTerm> terms, double constant, double alpha,
                     std::optional<VariableIndex> index)
    : size_(size), constant_(constant), alpha_(alpha), index_(std::move(index)) {
    if (size_ < 0) throw ValidationError("QUBO size must be non-negative");
    // merge duplicates onto the upper triangle, drop zeros, sort ascending
    std::map<std::pair<int, int>, double> merged;
    for (const auto& t : terms) {
        int i = t.i, j = t.j;
        if (i < 0 || j < 0 || i >= size_ || j >= size_)
            throw ValidationError("QUBO term index out of range");
        if (i > j) std::swap(i, j);
        merged[{i, j}] += t.q;
    }
    terms_.reserve(merged.size());
    linear_.assign(static_cast<std::size_t>(size_), 0.0);
    neighbors_.assign(static_cast<std::size_t>(size_), {});
    for (const auto& [key, q] : merged) {
        if (q == 0.0) continue;
        terms_.push_back({key.first, key.second, q});
        if (key.first == key.second) {
            linear_[static_cast<std::size_t>(key.first)] = q;
        } else {
            neighbors_[static_cast<std::size_t>(key.first)].emplace_back(key.second, q);
            neighbors_[static_cast<std::size_t>(key.second)].emplace_back(key.first, q);
        }
    }
}

QuboModel QuboModel::from_coefficients(int size, std::vector<QuboTerm> terms, double constant) {
    return QuboModel(size, std::move(terms), constant, 0.0);
}

const VariableIndex& QuboModel::index() const {
    if (!index_) throw ValidationError("QUBO model carries no variable index");
    return *index_;
}

double QuboModel::energy(std::span<const std::uint8_t> bits) const {
    if (static_cast<int>(bits.size()) != size_)
        throw ValidationError("bitstring length " + std::to_string(bits.size()) +
                              " does not match QUBO size " + std::to_string(size_));
    double e = constant_;
    for (const auto& t : terms_) {  // ascending (i, j): fixed summation order
        if (bits[static_cast<std::size_t>(t.i)] && bits[static_cast<std::size_t>(t.j)]) e += t.q;
    }
    return e;
}

double QuboModel::coefficient(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair<int, int>{i, j},
                               [](const QuboTerm& t, const std::pair<int, int>& key) {
                                   return std::pair<int, int>{t.i, t.j} < key;
                               });
    if (it != terms_.end() && it->i == i && it->j == j) return it->q;
    return 0.0;
}

double QuboModel::flip_delta(std::span<const std::uint8_t> bits, int i) const {
    double row = linear_[static_cast<std::size_t>(i)];
    for (auto [j, q] : neighbors_[static_cast<std::size_t>(i)])
        if (bits[static_cast<std::size_t>(j)]) row += q;
    return bits[static_cast<std::size_t>(i)] ? -row : row;
}

void QuboModel::write(std::ostream& out) const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", constant_);
    out << "qubo " << size_ << ' ' << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", alpha_);
    out << ' ' << buf << '\n';
    for (const auto& t : terms_) {
        std::snprintf(buf, sizeof(buf), "%.17g", t.q);
        out << t.i << ' ' << t.j << ' ' << buf << '\n';
    }
}

IsingModel::IsingModel(int size, std::vector<IsingTerm> couplings, std::vector<double> fields,
                       double offset)
    : size_(size), couplings_(std::move(couplings)), fields_(std::move(fields)), offset_(offset) {
    for (const auto& c : couplings_)
        if (c.i >= c.j || c.i < 0 || c.j >= size_)
            throw ValidationError("Ising coupling must satisfy 0 <= i < j < N");
    if (static_cast<int>(fields_.size()) != size_)
        throw ValidationError("Ising field vector length mismatch");
}

double IsingModel::energy(std::span<const std::int8_t> spins) const {
    if (static_cast<int>(spins.size()) != size_)
        throw ValidationError("spin vector length does not match Ising size");
    double e = 0.0;
    for (const auto& c : couplings_)
        e += c.coupling * spins[static_cast<std::size_t>(c.i)] *
             spins[static_cast<std::size_t>(c.j)];
    for (int i = 0; i < size_; ++i)
        e += fields_[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
    return e;
}

QuboModel build_qubo(const MulticutInstance& instance, std::optional<double> penalty_weight,
                     bool reduced) {
    double alpha = penalty_weight.value_or(1.0 + instance.total_edge_cost());
    if (!(alpha > 0.0)) throw ValidationError("penalty weight must be positive");

    VariableIndex idx = reduced ? VariableIndex::reduced(instance) : VariableIndex::full(instance);
    const int k = idx.k();
    const auto& terminals = idx.terminals();

    std::vector<QuboTerm> terms;
    double constant = 0.0;

    // one-hot penalty per indexed vertex: alpha * (1 - sum_t x_{u,t})^2
    for (int vpos = 0; vpos < static_cast<int>(idx.vertices().size()); ++vpos) {
        int u = idx.vertices()[static_cast<std::size_t>(vpos)];
        constant += alpha;
        for (int t = 0; t < k; ++t) {
            int i = idx.index_of(u, t);
            terms.push_back({i, i, -alpha});
            for (int t2 = t + 1; t2 < k; ++t2)
                terms.push_back({i, idx.index_of(u, t2), 2.0 * alpha});
        }
    }

    // terminal-overlap penalty: alpha * x_{t,t'} for t != t' (full mode only;
    // reduced mode has those variables fixed to zero)
    if (!idx.is_reduced()) {
        for (int t : terminals) {
            for (int t2 = 0; t2 < k; ++t2) {
                if (terminals[static_cast<std::size_t>(t2)] == t) continue;
                int i = idx.index_of(t, t2);
                terms.push_back({i, i, alpha});
            }
        }
    }

    // cut costs: C({u,v}) x_{u,t} x_{v,t'} over ordered terminal pairs t != t'
    auto is_indexed = [&](int v) { return !idx.is_reduced() || !instance.is_terminal(v); };
    auto terminal_pos = [&](int v) {
        return static_cast<int>(std::lower_bound(terminals.begin(), terminals.end(), v) -
                                terminals.begin());
    };
    for (const Edge& e : instance.edges()) {
        const bool u_in = is_indexed(e.u);
        const bool v_in = is_indexed(e.v);
        if (u_in && v_in) {
            for (int t = 0; t < k; ++t)
                for (int t2 = 0; t2 < k; ++t2)
                    if (t != t2) terms.push_back({idx.index_of(e.u, t), idx.index_of(e.v, t2), e.cost});
        } else if (u_in != v_in) {
            // reduced mode, terminal endpoint fixed: linear cost on every
            // assignment of the free endpoint away from that terminal
            int fixed = u_in ? e.v : e.u;
            int free_v = u_in ? e.u : e.v;
            int fpos = terminal_pos(fixed);
            for (int t = 0; t < k; ++t) {
                if (t == fpos) continue;
                int i = idx.index_of(free_v, t);
                terms.push_back({i, i, e.cost});
            }
        } else {
            // both endpoints are fixed terminals: the edge is always cut
            constant += e.cost;
        }
    }

    const int n = idx.size();
    return QuboModel(n, std::move(terms), constant, alpha, std::move(idx));
}

IsingModel to_ising(const QuboModel& model) {
    const int n = model.size();
    std::vector<IsingTerm> couplings;
    std::vector<double> fields(static_cast<std::size_t>(n), 0.0);
    double offset = model.constant();
    for (const auto& t : model.terms()) {
        if (t.i == t.j) {
            fields[static_cast<std::size_t>(t.i)] -= t.q / 2.0;
            offset += t.q / 2.0;
        } else {
            couplings.push_back({t.i, t.j, t.q / 4.0});
            fields[static_cast<std::size_t>(t.i)] -= t.q / 4.0;
            fields[static_cast<std::size_t>(t.j)] -= t.q / 4.0;
            offset += t.q / 4.0;
        }
    }
    return IsingModel(n, std::move(couplings), std::move(fields), offset);
}

double qubo_energy(const QuboModel& model, std::span<const std::uint8_t> bits) {
    return model.energy(bits);
}

DecodeResult decode_bitstring(const VariableIndex& index, std::span<const std::uint8_t> bits) {
    if (static_cast<int>(bits.size()) != index.size())
        throw ValidationError("bitstring length does not match variable index");
    DecodeResult result;
    std::vector<int> assignment(static_cast<std::size_t>(index.num_instance_vertices()), -1);
    const int k = index.k();
    for (int vpos = 0; vpos < static_cast<int>(index.vertices().size()); ++vpos) {
        int u = index.vertices()[static_cast<std::size_t>(vpos)];
        int chosen = -1;
        int count = 0;
        for (int t = 0; t < k; ++t) {
            if (bits[static_cast<std::size_t>(vpos * k + t)]) {
                ++count;
                chosen = index.terminals()[static_cast<std::size_t>(t)];
            }
        }
        if (count == 0) {
            result.violations.push_back({u, DecodeViolation::Kind::Unassigned});
        } else if (count > 1) {
            result.violations.push_back({u, DecodeViolation::Kind::MultipleTerminals});
        } else {
            assignment[static_cast<std::size_t>(u)] = chosen;
        }
    }
    for (int t : index.terminals()) {
        if (index.is_reduced()) {
            assignment[static_cast<std::size_t>(t)] = t;
        } else if (assignment[static_cast<std::size_t>(t)] != -1 &&
                   assignment[static_cast<std::size_t>(t)] != t) {
            result.violations.push_back({t, DecodeViolation::Kind::TerminalMisassigned});
        }
    }
    if (result.violations.empty()) result.assignment = std::move(assignment);
    return result;
}

void for_each_energy(const QuboModel& model,
                     const std::function<void(const std::vector<std::uint8_t>&, double)>& fn) {
    const int n = model.size();
    if (n > 26) throw CapacityError("exhaustive enumeration capped at 26 variables, got " +
                                    std::to_string(n));
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    double energy = model.constant();
    fn(bits, energy);
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t g = 1; g < total; ++g) {
        int flip = static_cast<int>(__builtin_ctzll(g));  // Gray-code walk
        energy += model.flip_delta(bits, flip);
        bits[static_cast<std::size_t>(flip)] ^= 1;
        // incremental deltas drift over long walks; re-anchor periodically
        if ((g & 0x3ff) == 0) energy = model.energy(bits);
        fn(bits, energy);
    }
}

std::vector<std::uint8_t> bits_from_basis_index(std::uint64_t b, int n) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (b >> i) & 1;
    return bits;
}

std::uint64_t basis_index_from_bits(std::span<const std::uint8_t> bits) {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) b |= 1ULL << i;
    return b;
}

}  // namespace memc
