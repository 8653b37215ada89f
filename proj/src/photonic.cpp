#include "memc/photonic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "memc/errors.hpp"
#include "memc/rng.hpp"

namespace memc {

namespace {

constexpr std::size_t kMaxBasisSize = 2'000'000;
constexpr std::size_t kMaxBasisCells = 32'000'000;  // size * modes storage bound
constexpr int kMaxPhotons = 60;                     // factorial range in double

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// (N+1)x(N+1) two-mode block for total photon number N: entry (c, a) is the
// amplitude for |a, N-a> on the pair going to |c, N-c>. Binomial expansion of
// the substituted creation operators.
std::vector<std::complex<double>> bs_block(int total, double theta, double phi) {
    const int dim = total + 1;
    std::vector<std::complex<double>> block(static_cast<std::size_t>(dim) * dim,
                                            std::complex<double>(0.0, 0.0));
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    std::vector<double> choose(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int n = 0; n < dim; ++n) {
        choose[static_cast<std::size_t>(n) * dim] = 1.0;
        for (int r = 1; r <= n; ++r)
            choose[static_cast<std::size_t>(n) * dim + r] =
                choose[static_cast<std::size_t>(n - 1) * dim + r - 1] +
                (r <= n - 1 ? choose[static_cast<std::size_t>(n - 1) * dim + r] : 0.0);
    }
    for (int a = 0; a <= total; ++a) {
        const int b = total - a;
        for (int r = 0; r <= a; ++r) {
            for (int s = 0; s <= b; ++s) {
                const int c = r + s;
                const int d = total - c;
                double mag = choose[static_cast<std::size_t>(a) * dim + r] *
                             choose[static_cast<std::size_t>(b) * dim + s] *
                             std::pow(ct, r + b - s) * std::pow(st, a - r + s) *
                             std::sqrt(factorial(c) * factorial(d) /
                                       (factorial(a) * factorial(b)));
                if (s % 2 != 0) mag = -mag;
                const double angle = phi * static_cast<double>(s - (a - r));
                block[static_cast<std::size_t>(c) * dim + a] += std::polar(mag, angle);
            }
        }
    }
    return block;
}

void check_mode(const FockState& state, int mode) {
    if (mode < 0 || mode >= state.basis->modes())
        throw ValidationError("mode " + std::to_string(mode) + " out of range");
}

}  // namespace

FockBasis::FockBasis(int modes, int photons) : modes_(modes), photons_(photons) {
    if (modes_ < 1) throw ValidationError("Fock basis needs at least one mode");
    if (photons_ < 0) throw ValidationError("photon number must be non-negative");
    if (photons_ > kMaxPhotons)
        throw CapacityError("photon number capped at " + std::to_string(kMaxPhotons));

    // Pascal table C(n, k) for n <= modes + photons; the basis size check runs
    // in floating point first so big inputs fail cleanly instead of overflowing.
    const int rows = modes_ + photons_ + 1;
    choose_stride_ = rows;
    {
        double size_check = 1.0;
        for (int i = 1; i <= photons_; ++i)
            size_check = size_check * (modes_ - 1 + i) / i;
        if (size_check > static_cast<double>(kMaxBasisSize))
            throw CapacityError("Fock basis would hold ~" + std::to_string(size_check) +
                                " states (cap " + std::to_string(kMaxBasisSize) + ")");
        if (size_check * modes_ > static_cast<double>(kMaxBasisCells))
            throw CapacityError("Fock basis storage exceeds the implementation bound");
    }
    choose_.assign(static_cast<std::size_t>(rows) * rows, 0);
    for (int n = 0; n < rows; ++n) {
        choose_[static_cast<std::size_t>(n) * choose_stride_] = 1;
        for (int k = 1; k <= n; ++k) {
            std::uint64_t up = choose_[static_cast<std::size_t>(n - 1) * choose_stride_ + k - 1];
            std::uint64_t left = k <= n - 1
                                     ? choose_[static_cast<std::size_t>(n - 1) * choose_stride_ + k]
                                     : 0;
            choose_[static_cast<std::size_t>(n) * choose_stride_ + k] = up + left;
        }
    }
    size_ = static_cast<std::size_t>(completions(modes_, photons_));

    // enumerate lexicographically descending
    flat_.reserve(size_ * static_cast<std::size_t>(modes_));
    std::vector<int> occ(static_cast<std::size_t>(modes_), 0);
    occ[0] = photons_;
    if (modes_ == 1) occ[0] = photons_;
    for (;;) {
        flat_.insert(flat_.end(), occ.begin(), occ.end());
        // next vector in descending lexicographic order: find the rightmost
        // entry (excluding the last mode) that can give a photon to the right
        int j = modes_ - 2;
        while (j >= 0 && occ[static_cast<std::size_t>(j)] == 0) --j;
        if (j < 0) break;
        --occ[static_cast<std::size_t>(j)];
        int carry = photons_;
        for (int i = 0; i <= j; ++i) carry -= occ[static_cast<std::size_t>(i)];
        for (int i = j + 1; i < modes_; ++i) occ[static_cast<std::size_t>(i)] = 0;
        occ[static_cast<std::size_t>(j) + 1] = carry;
    }
    if (flat_.size() != size_ * static_cast<std::size_t>(modes_))
        throw std::logic_error("Fock basis enumeration mismatch");
}

std::uint64_t FockBasis::completions(int m, int p) const {
    if (m == 0) return p == 0 ? 1 : 0;
    // C(m + p - 1, p)
    return choose_[static_cast<std::size_t>(m + p - 1) * choose_stride_ + p];
}

std::span<const int> FockBasis::occupation(std::size_t index) const {
    if (index >= size_) throw ValidationError("Fock basis index out of range");
    return {flat_.data() + index * static_cast<std::size_t>(modes_),
            static_cast<std::size_t>(modes_)};
}

std::size_t FockBasis::index_of(std::span<const int> occupation) const {
    if (static_cast<int>(occupation.size()) != modes_)
        throw ValidationError("occupation length does not match mode count");
    std::uint64_t rank = 0;
    int remaining = photons_;
    for (int j = 0; j < modes_ - 1; ++j) {
        const int nj = occupation[static_cast<std::size_t>(j)];
        if (nj < 0 || nj > remaining) throw ValidationError("occupation is not in this basis");
        for (int v = nj + 1; v <= remaining; ++v)
            rank += completions(modes_ - j - 1, remaining - v);
        remaining -= nj;
    }
    if (occupation[static_cast<std::size_t>(modes_) - 1] != remaining)
        throw ValidationError("occupation photon count does not match basis");
    return static_cast<std::size_t>(rank);
}

double FockState::norm_squared() const {
    double n = 0.0;
    for (const auto& a : amplitudes) n += std::norm(a);
    return n;
}

FockState fock_basis_state(std::shared_ptr<const FockBasis> basis,
                           std::span<const int> occupation) {
    FockState state;
    state.amplitudes.assign(basis->size(), std::complex<double>(0.0, 0.0));
    state.amplitudes[basis->index_of(occupation)] = 1.0;
    state.basis = std::move(basis);
    return state;
}

void apply_beam_splitter(FockState& state, int p, int q, double theta, double phi) {
    check_mode(state, p);
    check_mode(state, q);
    if (p == q) throw ValidationError("beam splitter needs two distinct modes");
    const FockBasis& basis = *state.basis;
    const int photons = basis.photons();

    std::vector<std::vector<std::complex<double>>> blocks(
        static_cast<std::size_t>(photons) + 1);
    std::vector<char> have(static_cast<std::size_t>(photons) + 1, 0);

    std::vector<std::complex<double>> out(state.amplitudes.size(),
                                          std::complex<double>(0.0, 0.0));
    std::vector<int> scratch(static_cast<std::size_t>(basis.modes()));
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        const std::complex<double> amp = state.amplitudes[i];
        if (amp == std::complex<double>(0.0, 0.0)) continue;
        auto occ = basis.occupation(i);
        const int a = occ[static_cast<std::size_t>(p)];
        const int total = a + occ[static_cast<std::size_t>(q)];
        if (!have[static_cast<std::size_t>(total)]) {
            blocks[static_cast<std::size_t>(total)] = bs_block(total, theta, phi);
            have[static_cast<std::size_t>(total)] = 1;
        }
        const auto& block = blocks[static_cast<std::size_t>(total)];
        const int dim = total + 1;
        std::copy(occ.begin(), occ.end(), scratch.begin());
        for (int c = 0; c <= total; ++c) {
            const std::complex<double> coef = block[static_cast<std::size_t>(c) * dim + a];
            if (coef == std::complex<double>(0.0, 0.0)) continue;
            scratch[static_cast<std::size_t>(p)] = c;
            scratch[static_cast<std::size_t>(q)] = total - c;
            out[basis.index_of(scratch)] += coef * amp;
        }
    }
    state.amplitudes = std::move(out);
}

void apply_phase_shifter(FockState& state, int mode, double phi) {
    check_mode(state, mode);
    const FockBasis& basis = *state.basis;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        const int n = basis.occupation(i)[static_cast<std::size_t>(mode)];
        state.amplitudes[i] *= std::polar(1.0, phi * static_cast<double>(n));
    }
}

InterferometerCircuit::InterferometerCircuit(int modes) : modes_(modes) {
    if (modes_ < 1) throw ValidationError("circuit needs at least one mode");
}

void InterferometerCircuit::add_beam_splitter(int p, int q) {
    if (p < 0 || q < 0 || p >= modes_ || q >= modes_ || p == q)
        throw ValidationError("invalid beam splitter mode pair");
    Gate g;
    g.type = Gate::Type::BeamSplitter;
    g.mode_a = p;
    g.mode_b = q;
    g.theta_param = parameter_count_++;
    g.phi_param = parameter_count_++;
    gates_.push_back(g);
}

void InterferometerCircuit::add_phase_shifter(int mode) {
    if (mode < 0 || mode >= modes_) throw ValidationError("invalid phase shifter mode");
    Gate g;
    g.type = Gate::Type::PhaseShifter;
    g.mode_a = mode;
    g.phi_param = parameter_count_++;
    gates_.push_back(g);
}

void InterferometerCircuit::write(std::ostream& out, std::span<const double> params) const {
    if (static_cast<int>(params.size()) != parameter_count_)
        throw ValidationError("parameter vector length does not match circuit registry");
    out << "lo " << modes_ << '\n';
    char a[32], b[32];
    for (const Gate& g : gates_) {
        if (g.type == Gate::Type::BeamSplitter) {
            std::snprintf(a, sizeof(a), "%.17g", params[static_cast<std::size_t>(g.theta_param)]);
            std::snprintf(b, sizeof(b), "%.17g", params[static_cast<std::size_t>(g.phi_param)]);
            out << "bs " << g.mode_a << ' ' << g.mode_b << ' ' << a << ' ' << b << '\n';
        } else {
            std::snprintf(a, sizeof(a), "%.17g", params[static_cast<std::size_t>(g.phi_param)]);
            out << "ps " << g.mode_a << ' ' << a << '\n';
        }
    }
}

InterferometerCircuit build_generic_interferometer(int modes) {
    if (modes < 2) throw ValidationError("generic interferometer needs at least 2 modes");
    InterferometerCircuit circuit(modes);
    for (int layer = 0; layer < modes; ++layer) {
        for (int p = layer % 2; p + 1 < modes; p += 2) circuit.add_beam_splitter(p, p + 1);
    }
    for (int j = 0; j < modes; ++j) circuit.add_phase_shifter(j);
    return circuit;
}

FockState run_circuit(const InterferometerCircuit& circuit, std::span<const int> input_occupation,
                      std::span<const double> params) {
    if (static_cast<int>(input_occupation.size()) != circuit.modes())
        throw ValidationError("input occupation length does not match circuit modes");
    if (static_cast<int>(params.size()) != circuit.parameter_count())
        throw ValidationError("parameter vector length does not match circuit registry");
    int photons = 0;
    for (int n : input_occupation) {
        if (n < 0) throw ValidationError("negative photon count in input");
        photons += n;
    }
    auto basis = std::make_shared<const FockBasis>(circuit.modes(), photons);
    FockState state = fock_basis_state(std::move(basis), input_occupation);
    for (const Gate& g : circuit.gates()) {
        if (g.type == Gate::Type::BeamSplitter) {
            apply_beam_splitter(state, g.mode_a, g.mode_b,
                                params[static_cast<std::size_t>(g.theta_param)],
                                params[static_cast<std::size_t>(g.phi_param)]);
        } else {
            apply_phase_shifter(state, g.mode_a,
                                params[static_cast<std::size_t>(g.phi_param)]);
        }
    }
    return state;
}

std::vector<std::uint8_t> parity_decode(std::span<const int> occupation) {
    std::vector<std::uint8_t> bits(occupation.size());
    for (std::size_t i = 0; i < occupation.size(); ++i)
        bits[i] = static_cast<std::uint8_t>(occupation[i] & 1);
    return bits;
}

std::map<std::size_t, int> sample_fock_state(const FockState& state, int shots,
                                             std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shots must be >= 1");
    std::vector<double> cumulative(state.amplitudes.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        acc += std::norm(state.amplitudes[i]);
        cumulative[i] = acc;
    }
    Rng rng(seed);
    std::map<std::size_t, int> histogram;
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
        if (i >= state.amplitudes.size()) i = state.amplitudes.size() - 1;
        ++histogram[i];
    }
    return histogram;
}

namespace {

void check_model_matches(const QuboModel& model, const InterferometerCircuit& circuit) {
    if (model.size() != circuit.modes())
        throw ValidationError("expected one mode per QUBO variable: " +
                              std::to_string(model.size()) + " variables vs " +
                              std::to_string(circuit.modes()) + " modes");
}

// qubo_energy(parity(n)) for every basis state
std::vector<double> decoded_energies(const QuboModel& model, const FockBasis& basis) {
    std::vector<double> energies(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        energies[i] = model.energy(parity_decode(basis.occupation(i)));
    return energies;
}

}  // namespace

double photonic_expectation(const QuboModel& model, const InterferometerCircuit& circuit,
                            std::span<const int> input_occupation,
                            std::span<const double> params) {
    check_model_matches(model, circuit);
    FockState state = run_circuit(circuit, input_occupation, params);
    auto energies = decoded_energies(model, *state.basis);
    double e = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i)
        e += std::norm(state.amplitudes[i]) * energies[i];
    return e;
}

double photonic_expectation_shots(const QuboModel& model, const InterferometerCircuit& circuit,
                                  std::span<const int> input_occupation,
                                  std::span<const double> params, int shots, std::uint64_t seed) {
    check_model_matches(model, circuit);
    FockState state = run_circuit(circuit, input_occupation, params);
    auto energies = decoded_energies(model, *state.basis);
    auto histogram = sample_fock_state(state, shots, seed);
    double sum = 0.0;
    for (const auto& [i, count] : histogram) sum += energies[i] * count;
    return sum / static_cast<double>(shots);
}

std::vector<int> default_input_occupation(const QuboModel& model) {
    // feasible one-hot strings have one set bit per assigned vertex, and the
    // decoded weight is congruent to the photon number mod 2, so the photon
    // budget must equal the vertex count for those strings to be reachable
    const int photons = model.has_index() ? static_cast<int>(model.index().vertices().size())
                                          : model.size();
    std::vector<int> occupation(static_cast<std::size_t>(model.size()), 0);
    for (int i = 0; i < photons; ++i) occupation[static_cast<std::size_t>(i)] = 1;
    return occupation;
}

SolverReport photonic_optimize(const QuboModel& model, const PhotonicConfig& config,
                               std::uint64_t seed, OptimizerTrace* trace_out) {
    const double t0 = now_seconds();
    InterferometerCircuit circuit = build_generic_interferometer(model.size());
    std::vector<int> input = default_input_occupation(model);

    int photons = 0;
    for (int n : input) photons += n;
    auto basis = std::make_shared<const FockBasis>(circuit.modes(), photons);
    auto energies = decoded_energies(model, *basis);

    auto evolve = [&](std::span<const double> params) {
        FockState state = fock_basis_state(basis, input);
        for (const Gate& g : circuit.gates()) {
            if (g.type == Gate::Type::BeamSplitter) {
                apply_beam_splitter(state, g.mode_a, g.mode_b,
                                    params[static_cast<std::size_t>(g.theta_param)],
                                    params[static_cast<std::size_t>(g.phi_param)]);
            } else {
                apply_phase_shifter(state, g.mode_a,
                                    params[static_cast<std::size_t>(g.phi_param)]);
            }
        }
        return state;
    };

    int shot_stream = 0;
    Objective objective = [&](std::span<const double> params) {
        FockState state = evolve(params);
        if (config.shot_objective) {
            auto histogram = sample_fock_state(
                state, config.objective_shots,
                derive_seed(seed, 0x0b5 + static_cast<std::uint64_t>(shot_stream++)));
            double sum = 0.0;
            for (const auto& [i, count] : histogram) sum += energies[i] * count;
            return sum / static_cast<double>(config.objective_shots);
        }
        double e = 0.0;
        for (std::size_t i = 0; i < state.amplitudes.size(); ++i)
            e += std::norm(state.amplitudes[i]) * energies[i];
        return e;
    };

    Rng init_rng(derive_seed(seed, 1));
    std::vector<double> start(static_cast<std::size_t>(circuit.parameter_count()));
    for (auto& v : start) v = init_rng.uniform(0.0, 2.0 * std::numbers::pi);

    OptimizerConfig opt;
    opt.max_evaluations = config.max_evaluations;
    opt.tolerance = config.tolerance;
    opt.bounds = std::vector<std::pair<double, double>>(start.size(),
                                                        {0.0, 2.0 * std::numbers::pi});
    OptimizeResult fit = nelder_mead(objective, start, opt);

    FockState state = evolve(fit.best_point);
    auto histogram = sample_fock_state(state, config.final_shots, derive_seed(seed, 2));

    // global QUBO optimum for the hit-probability readout
    double optimum = std::numeric_limits<double>::infinity();
    for_each_energy(model, [&](const std::vector<std::uint8_t>&, double e) {
        if (e < optimum) optimum = e;
    });

    SolverReport report;
    report.backend = "photonic";
    report.seed = seed;
    report.converged = fit.converged;
    report.samples_evaluated = fit.evaluations;
    report.expectation = fit.best_value;
    report.best_params = fit.best_point;

    int optimal_hits = 0;
    double best_energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> best_bits;
    double best_feasible_energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> best_feasible_bits;
    for (const auto& [i, count] : histogram) {
        auto bits = parity_decode(basis->occupation(i));
        const double e = energies[i];
        if (e <= optimum + 1e-9) optimal_hits += count;
        if (better_result(e, bits, best_energy, best_bits)) {
            best_energy = e;
            best_bits = bits;
        }
        if (model.has_index() && decode_bitstring(model.index(), bits).feasible() &&
            better_result(e, bits, best_feasible_energy, best_feasible_bits)) {
            best_feasible_energy = e;
            best_feasible_bits = bits;
        }
    }
    if (!best_feasible_bits.empty()) {
        report.best_energy = best_feasible_energy;
        report.best_bitstring = best_feasible_bits;
    } else {
        report.best_energy = best_energy;
        report.best_bitstring = best_bits;
    }
    report.optimal_sampling_probability =
        static_cast<double>(optimal_hits) / static_cast<double>(config.final_shots);
    if (trace_out) *trace_out = std::move(fit.trace);
    report.wall_seconds = now_seconds() - t0;
    return report;
}

}  // namespace memc
