#include "memc/qaoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "memc/errors.hpp"
#include "memc/rng.hpp"

namespace memc {

namespace {

constexpr int kMaxQubits = 24;

void check_capacity(int n) {
    if (n < 1) throw ValidationError("need at least one qubit");
    if (n > kMaxQubits)
        throw CapacityError("statevector capped at " + std::to_string(kMaxQubits) +
                            " qubits, got " + std::to_string(n));
}

int qubit_count_from_size(std::size_t n) {
    int bits = 0;
    while ((1ULL << bits) < n) ++bits;
    if ((1ULL << bits) != n) throw ValidationError("vector length is not a power of two");
    return bits;
}

int qubit_count(const Statevector& state) { return qubit_count_from_size(state.size()); }

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

void QaoaParams::validate() const {
    if (gammas.size() != betas.size())
        throw ValidationError("gamma and beta vectors must have equal length");
    if (gammas.empty()) throw ValidationError("QAOA depth must be >= 1");
    for (double g : gammas)
        if (!std::isfinite(g)) throw ValidationError("non-finite gamma");
    for (double b : betas)
        if (!std::isfinite(b)) throw ValidationError("non-finite beta");
}

Statevector prepare_plus_state(int n) {
    check_capacity(n);
    const double amp = std::pow(2.0, -0.5 * n);
    return Statevector(1ULL << n, std::complex<double>(amp, 0.0));
}

EnergyTable build_energy_table(const QuboModel& model) {
    check_capacity(model.size());
    EnergyTable table(1ULL << model.size());
    for_each_energy(model, [&](const std::vector<std::uint8_t>& bits, double energy) {
        table[basis_index_from_bits(bits)] = energy;
    });
    return table;
}

void apply_cost_layer(Statevector& state, const EnergyTable& energies, double gamma) {
    if (state.size() != energies.size())
        throw ValidationError("energy table length does not match statevector");
    for (std::size_t b = 0; b < state.size(); ++b)
        state[b] *= std::polar(1.0, -gamma * energies[b]);
}

void apply_mixer_layer(Statevector& state, double beta) {
    const int n = qubit_count(state);
    const double c = std::cos(beta);
    const std::complex<double> ms(0.0, -std::sin(beta));
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = 1ULL << q;
        for (std::uint64_t b = 0; b < state.size(); ++b) {
            if (b & bit) continue;
            const std::complex<double> a0 = state[b];
            const std::complex<double> a1 = state[b | bit];
            state[b] = c * a0 + ms * a1;
            state[b | bit] = ms * a0 + c * a1;
        }
    }
}

Statevector qaoa_state(const EnergyTable& energies, const QaoaParams& params) {
    params.validate();
    const int n = qubit_count_from_size(energies.size());
    Statevector state = prepare_plus_state(n);
    for (int layer = 0; layer < params.depth(); ++layer) {
        apply_cost_layer(state, energies, params.gammas[static_cast<std::size_t>(layer)]);
        apply_mixer_layer(state, params.betas[static_cast<std::size_t>(layer)]);
    }
    return state;
}

double expectation_value(const Statevector& state, const EnergyTable& energies) {
    if (state.size() != energies.size())
        throw ValidationError("energy table length does not match statevector");
    double e = 0.0;
    for (std::size_t b = 0; b < state.size(); ++b) e += std::norm(state[b]) * energies[b];
    return e;
}

double qaoa_expectation(const QuboModel& model, const QaoaParams& params) {
    EnergyTable table = build_energy_table(model);
    return expectation_value(qaoa_state(table, params), table);
}

std::map<std::uint64_t, int> sample_state(const Statevector& state, int shots,
                                          std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shots must be >= 1");
    std::vector<double> cumulative(state.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < state.size(); ++b) {
        acc += std::norm(state[b]);
        cumulative[b] = acc;
    }
    Rng rng(seed);
    std::map<std::uint64_t, int> histogram;
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::uint64_t b = static_cast<std::uint64_t>(it - cumulative.begin());
        if (b >= state.size()) b = state.size() - 1;
        ++histogram[b];
    }
    return histogram;
}

std::map<std::uint64_t, int> qaoa_sample(const QuboModel& model, const QaoaParams& params,
                                         int shots, std::uint64_t seed) {
    EnergyTable table = build_energy_table(model);
    return sample_state(qaoa_state(table, params), shots, seed);
}

SolverReport qaoa_optimize(const QuboModel& model, const QaoaConfig& config, std::uint64_t seed,
                           OptimizerTrace* trace_out) {
    if (config.depth < 1) throw ValidationError("QAOA depth must be >= 1");
    const double t0 = now_seconds();
    const int p = config.depth;
    const int n = model.size();
    check_capacity(n);
    EnergyTable table = build_energy_table(model);

    // parameter layout: [gamma_1..gamma_p, beta_1..beta_p]
    auto unpack = [p](std::span<const double> x) {
        QaoaParams params;
        params.gammas.assign(x.begin(), x.begin() + p);
        params.betas.assign(x.begin() + p, x.end());
        return params;
    };
    Objective objective = [&](std::span<const double> x) {
        return expectation_value(qaoa_state(table, unpack(x)), table);
    };

    OptimizerConfig opt;
    opt.max_evaluations = config.max_evaluations;
    opt.tolerance = config.tolerance;
    opt.bounds = std::vector<std::pair<double, double>>(static_cast<std::size_t>(2 * p),
                                                        {0.0, std::numbers::pi});
    std::vector<double> start(static_cast<std::size_t>(2 * p));
    for (int i = 0; i < p; ++i) {
        start[static_cast<std::size_t>(i)] = config.gamma_init;
        start[static_cast<std::size_t>(p + i)] = config.beta_init;
    }
    if (config.init_params) {
        if (static_cast<int>(config.init_params->size()) != 2 * p)
            throw ValidationError("init_params must hold 2p angles");
        start = *config.init_params;
    }
    OptimizeResult fit = nelder_mead(objective, start, opt);

    Statevector state = qaoa_state(table, unpack(fit.best_point));
    auto histogram = sample_state(state, config.final_shots, derive_seed(seed, 0x51));

    SolverReport report;
    report.backend = "qaoa";
    report.seed = seed;
    report.converged = fit.converged;
    report.samples_evaluated = fit.evaluations;
    report.expectation = fit.best_value;
    report.best_params = fit.best_point;

    const double table_min = *std::min_element(table.begin(), table.end());
    int optimal_hits = 0;
    double best_energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> best_bits;
    for (const auto& [b, count] : histogram) {
        const double e = table[b];
        if (e <= table_min + 1e-9) optimal_hits += count;
        auto bits = bits_from_basis_index(b, n);
        if (better_result(e, bits, best_energy, best_bits)) {
            best_energy = e;
            best_bits = std::move(bits);
        }
    }
    report.best_energy = best_energy;
    report.best_bitstring = best_bits;
    report.optimal_sampling_probability =
        static_cast<double>(optimal_hits) / static_cast<double>(config.final_shots);
    if (trace_out) *trace_out = std::move(fit.trace);
    report.wall_seconds = now_seconds() - t0;
    return report;
}

GridScanResult qaoa_grid_scan_p1(const QuboModel& model, int points) {
    if (points < 2) throw ValidationError("grid needs at least 2 points per axis");
    EnergyTable table = build_energy_table(model);
    std::vector<double> axis(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        axis[static_cast<std::size_t>(i)] =
            std::numbers::pi * static_cast<double>(i) / static_cast<double>(points - 1);
    Objective objective = [&](std::span<const double> x) {
        QaoaParams params{{x[0]}, {x[1]}};
        return expectation_value(qaoa_state(table, params), table);
    };
    OptimizeResult scan = grid_scan(objective, {axis, axis});
    GridScanResult result;
    result.gamma = scan.best_point[0];
    result.beta = scan.best_point[1];
    result.expectation = scan.best_value;
    result.trace = std::move(scan.trace);
    return result;
}

}  // namespace memc
