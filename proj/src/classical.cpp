#include "memc/classical.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "memc/errors.hpp"
#include "memc/rng.hpp"

namespace memc {

namespace {

constexpr double kResidualTol = 1e-9;

// Residual network with paired arcs (reverse of arc a is a ^ 1).
class FlowNetwork {
public:
    explicit FlowNetwork(int n) : adj_(static_cast<std::size_t>(n)) {}

    void add_arc(int u, int v, double cap_fwd, double cap_bwd) {
        adj_[static_cast<std::size_t>(u)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({v, cap_fwd});
        adj_[static_cast<std::size_t>(v)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({u, cap_bwd});
    }

    // Edmonds-Karp: BFS for the shortest augmenting path, repeat until none.
    double max_flow(int s, int t) {
        double total = 0.0;
        const int n = static_cast<int>(adj_.size());
        std::vector<int> parent_arc(static_cast<std::size_t>(n));
        for (;;) {
            std::fill(parent_arc.begin(), parent_arc.end(), -1);
            parent_arc[static_cast<std::size_t>(s)] = -2;
            std::queue<int> q;
            q.push(s);
            while (!q.empty() && parent_arc[static_cast<std::size_t>(t)] == -1) {
                int u = q.front();
                q.pop();
                for (int a : adj_[static_cast<std::size_t>(u)]) {
                    int to = arcs_[static_cast<std::size_t>(a)].to;
                    if (parent_arc[static_cast<std::size_t>(to)] == -1 &&
                        arcs_[static_cast<std::size_t>(a)].cap > kResidualTol) {
                        parent_arc[static_cast<std::size_t>(to)] = a;
                        q.push(to);
                    }
                }
            }
            if (parent_arc[static_cast<std::size_t>(t)] == -1) break;
            double bottleneck = std::numeric_limits<double>::infinity();
            for (int v = t; v != s;) {
                int a = parent_arc[static_cast<std::size_t>(v)];
                bottleneck = std::min(bottleneck, arcs_[static_cast<std::size_t>(a)].cap);
                v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            for (int v = t; v != s;) {
                int a = parent_arc[static_cast<std::size_t>(v)];
                arcs_[static_cast<std::size_t>(a)].cap -= bottleneck;
                arcs_[static_cast<std::size_t>(a ^ 1)].cap += bottleneck;
                v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            total += bottleneck;
        }
        return total;
    }

    // Vertices reachable from s through residual capacity > tolerance.
    std::vector<char> reachable(int s) const {
        std::vector<char> seen(adj_.size(), 0);
        seen[static_cast<std::size_t>(s)] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int a : adj_[static_cast<std::size_t>(u)]) {
                const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap > kResidualTol && !seen[static_cast<std::size_t>(arc.to)]) {
                    seen[static_cast<std::size_t>(arc.to)] = 1;
                    q.push(arc.to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        int to;
        double cap;  // residual capacity
    };
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> adj_;
};

FlowNetwork undirected_network(const MulticutInstance& instance, int extra_vertices = 0) {
    FlowNetwork net(instance.num_vertices() + extra_vertices);
    for (const Edge& e : instance.edges()) net.add_arc(e.u, e.v, e.cost, e.cost);
    return net;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Minimum cut isolating terminals[which] from all the others.
// Returns (cut value, source-side reachable flags over instance vertices).
std::pair<double, std::vector<char>> isolating_cut(const MulticutInstance& instance, int which) {
    const int sink = instance.num_vertices();
    FlowNetwork net = undirected_network(instance, 1);
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < instance.k(); ++i) {
        if (i == which) continue;
        net.add_arc(instance.terminals()[static_cast<std::size_t>(i)], sink, inf, 0.0);
    }
    double value = net.max_flow(instance.terminals()[static_cast<std::size_t>(which)], sink);
    auto seen = net.reachable(instance.terminals()[static_cast<std::size_t>(which)]);
    seen.resize(static_cast<std::size_t>(instance.num_vertices()));
    return {value, seen};
}

bool terminals_separated(const MulticutInstance& instance, const std::vector<char>& cut_edge) {
    std::vector<std::vector<std::pair<int, int>>> adj(
        static_cast<std::size_t>(instance.num_vertices()));
    for (std::size_t e = 0; e < instance.edges().size(); ++e) {
        if (cut_edge[e]) continue;
        const Edge& ed = instance.edges()[e];
        adj[static_cast<std::size_t>(ed.u)].emplace_back(ed.v, static_cast<int>(e));
        adj[static_cast<std::size_t>(ed.v)].emplace_back(ed.u, static_cast<int>(e));
    }
    std::vector<int> owner(static_cast<std::size_t>(instance.num_vertices()), -1);
    for (int t : instance.terminals()) {
        if (owner[static_cast<std::size_t>(t)] != -1) return false;
        owner[static_cast<std::size_t>(t)] = t;
        std::queue<int> q;
        q.push(t);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
                (void)e;
                if (owner[static_cast<std::size_t>(v)] == -1) {
                    owner[static_cast<std::size_t>(v)] = t;
                    q.push(v);
                } else if (owner[static_cast<std::size_t>(v)] != t) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

AnnealSchedule AnnealSchedule::defaults_for(const MulticutInstance& instance) {
    AnnealSchedule s;
    s.initial_temperature = std::max(instance.total_edge_cost(), 1.0);
    s.final_temperature = 1e-2;
    s.sweeps = 1000;
    s.cooling = Cooling::Geometric;
    return s;
}

void AnnealSchedule::validate() const {
    if (!(final_temperature > 0.0) || initial_temperature < final_temperature)
        throw ValidationError("anneal schedule requires initial >= final > 0");
    if (sweeps < 1) throw ValidationError("anneal schedule requires sweeps >= 1");
}

double AnnealSchedule::temperature(int sweep) const {
    if (sweeps == 1) return initial_temperature;
    double f = static_cast<double>(sweep) / static_cast<double>(sweeps - 1);
    if (cooling == Cooling::Linear)
        return initial_temperature + f * (final_temperature - initial_temperature);
    return initial_temperature * std::pow(final_temperature / initial_temperature, f);
}

SolverReport brute_force_qubo(const QuboModel& model) {
    const double t0 = now_seconds();
    SolverReport report;
    report.backend = "exact_qubo";
    report.best_energy = std::numeric_limits<double>::infinity();
    std::int64_t visited = 0;
    for_each_energy(model, [&](const std::vector<std::uint8_t>& bits, double energy) {
        ++visited;
        if (energy < report.best_energy ||
            (energy == report.best_energy && better_result(energy, bits, energy, report.best_bitstring))) {
            report.best_energy = energy;
            report.best_bitstring = bits;
        }
    });
    report.samples_evaluated = visited;
    report.best_energy = model.energy(report.best_bitstring);  // exact, no walk drift
    report.wall_seconds = now_seconds() - t0;
    return report;
}

CutSolution brute_force_partition(const MulticutInstance& instance) {
    const int n = instance.num_vertices();
    const int k = instance.k();
    std::vector<int> free_vertices;
    for (int v = 0; v < n; ++v)
        if (!instance.is_terminal(v)) free_vertices.push_back(v);
    const int f = static_cast<int>(free_vertices.size());

    double combos = std::pow(static_cast<double>(k), static_cast<double>(f));
    if (combos > 16'777'216.0)
        throw CapacityError("brute-force partition would enumerate " + std::to_string(combos) +
                            " assignments");

    std::vector<int> assignment(static_cast<std::size_t>(n));
    for (int t : instance.terminals()) assignment[static_cast<std::size_t>(t)] = t;

    std::vector<int> digits(static_cast<std::size_t>(f), 0);
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_assignment;
    const std::uint64_t total = static_cast<std::uint64_t>(combos);
    for (std::uint64_t it = 0; it < total; ++it) {
        for (int i = 0; i < f; ++i)
            assignment[static_cast<std::size_t>(free_vertices[static_cast<std::size_t>(i)])] =
                instance.terminals()[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
        double cost = 0.0;
        for (const Edge& e : instance.edges())
            if (assignment[static_cast<std::size_t>(e.u)] != assignment[static_cast<std::size_t>(e.v)])
                cost += e.cost;
        if (cost < best_cost ||
            (cost == best_cost && !best_assignment.empty() && assignment < best_assignment)) {
            best_cost = cost;
            best_assignment = assignment;
        }
        // odometer increment over base-k digits, last digit fastest
        for (int i = f - 1; i >= 0; --i) {
            if (++digits[static_cast<std::size_t>(i)] < k) break;
            digits[static_cast<std::size_t>(i)] = 0;
        }
    }
    return validate_solution(instance, best_assignment);
}

CutSolution min_cut_k2(const MulticutInstance& instance) {
    if (instance.k() != 2)
        throw ValidationError("min_cut_k2 requires exactly 2 terminals, got " +
                              std::to_string(instance.k()));
    const int s = instance.terminals()[0];
    const int t = instance.terminals()[1];
    FlowNetwork net = undirected_network(instance);
    net.max_flow(s, t);
    auto source_side = net.reachable(s);

    std::vector<int> assignment(static_cast<std::size_t>(instance.num_vertices()));
    for (int v = 0; v < instance.num_vertices(); ++v)
        assignment[static_cast<std::size_t>(v)] = source_side[static_cast<std::size_t>(v)] ? s : t;
    return validate_solution(instance, assignment);
}

CutSolution greedy_isolation(const MulticutInstance& instance) {
    const int n = instance.num_vertices();
    const int k = instance.k();

    std::vector<double> values(static_cast<std::size_t>(k));
    std::vector<std::vector<char>> sides(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        auto [value, side] = isolating_cut(instance, i);
        values[static_cast<std::size_t>(i)] = value;
        sides[static_cast<std::size_t>(i)] = std::move(side);
    }
    // drop the most expensive isolating cut; ties drop the highest index
    int drop = 0;
    for (int i = 1; i < k; ++i)
        if (values[static_cast<std::size_t>(i)] >= values[static_cast<std::size_t>(drop)]) drop = i;

    std::vector<int> assignment(static_cast<std::size_t>(n),
                                instance.terminals()[static_cast<std::size_t>(drop)]);
    for (int i = 0; i < k; ++i) {
        if (i == drop) continue;
        for (int v = 0; v < n; ++v)
            if (sides[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] &&
                assignment[static_cast<std::size_t>(v)] ==
                    instance.terminals()[static_cast<std::size_t>(drop)])
                assignment[static_cast<std::size_t>(v)] =
                    instance.terminals()[static_cast<std::size_t>(i)];
    }

    // boundary of the assignment, then prune: restore any edge (most expensive
    // first) whose return keeps all terminals separated
    std::vector<char> cut(instance.edges().size(), 0);
    for (std::size_t e = 0; e < instance.edges().size(); ++e) {
        const Edge& ed = instance.edges()[e];
        cut[e] = assignment[static_cast<std::size_t>(ed.u)] !=
                 assignment[static_cast<std::size_t>(ed.v)];
    }
    std::vector<int> order;
    for (std::size_t e = 0; e < cut.size(); ++e)
        if (cut[e]) order.push_back(static_cast<int>(e));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return instance.edges()[static_cast<std::size_t>(a)].cost >
               instance.edges()[static_cast<std::size_t>(b)].cost;
    });
    for (int e : order) {
        cut[static_cast<std::size_t>(e)] = 0;
        if (!terminals_separated(instance, cut)) cut[static_cast<std::size_t>(e)] = 1;
    }

    // rebuild the assignment from the pruned cut's components
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < instance.edges().size(); ++e) {
        if (cut[e]) continue;
        const Edge& ed = instance.edges()[e];
        adj[static_cast<std::size_t>(ed.u)].emplace_back(ed.v, static_cast<int>(e));
        adj[static_cast<std::size_t>(ed.v)].emplace_back(ed.u, static_cast<int>(e));
    }
    for (int t : instance.terminals()) {
        owner[static_cast<std::size_t>(t)] = t;
        std::queue<int> q;
        q.push(t);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
                (void)e;
                if (owner[static_cast<std::size_t>(v)] == -1) {
                    owner[static_cast<std::size_t>(v)] = t;
                    q.push(v);
                }
            }
        }
    }
    // every component holds a terminal after pruning; fall back to the heavy
    // terminal for safety
    for (int v = 0; v < n; ++v)
        if (owner[static_cast<std::size_t>(v)] == -1)
            owner[static_cast<std::size_t>(v)] =
                instance.terminals()[static_cast<std::size_t>(drop)];
    return validate_solution(instance, owner);
}

SolverReport simulated_annealing(const QuboModel& model, const AnnealSchedule& schedule,
                                 int num_reads, std::uint64_t seed) {
    schedule.validate();
    if (num_reads < 1) throw ValidationError("num_reads must be >= 1");
    const double t0 = now_seconds();
    const int n = model.size();

    SolverReport report;
    report.backend = "sa";
    report.seed = seed;
    report.best_energy = std::numeric_limits<double>::infinity();
    std::int64_t proposals = 0;

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int read = 0; read < num_reads; ++read) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(read)));
        for (int i = 0; i < n; ++i) {
            bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.bounded(2));
            perm[static_cast<std::size_t>(i)] = i;
        }
        double energy = model.energy(bits);
        auto consider = [&](double e, const std::vector<std::uint8_t>& b) {
            if (e < report.best_energy ||
                (e == report.best_energy && better_result(e, b, e, report.best_bitstring))) {
                report.best_energy = e;
                report.best_bitstring = b;
            }
        };
        consider(energy, bits);
        for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
            const double temp = schedule.temperature(sweep);
            rng.shuffle(perm);
            for (int idx : perm) {
                ++proposals;
                double delta = model.flip_delta(bits, idx);
                if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temp)) {
                    bits[static_cast<std::size_t>(idx)] ^= 1;
                    energy += delta;
                    consider(energy, bits);
                }
            }
        }
    }
    // best_energy stays the incrementally tracked value; tests recompute it
    // from scratch and hold the difference under 1e-9
    report.samples_evaluated = proposals;
    report.wall_seconds = now_seconds() - t0;
    return report;
}

}  // namespace memc
