#include "memc/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "memc/errors.hpp"
#include "memc/rng.hpp"

namespace memc {

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[static_cast<std::size_t>(edges[e].u)].emplace_back(edges[e].v, static_cast<int>(e));
        adj[static_cast<std::size_t>(edges[e].v)].emplace_back(edges[e].u, static_cast<int>(e));
    }
    return adj;
}

// BFS component labels, optionally ignoring a set of edges (by index).
std::vector<int> components(int n, const std::vector<Edge>& edges,
                            const std::vector<char>* removed = nullptr) {
    auto adj = adjacency(n, edges);
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int label = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        comp[static_cast<std::size_t>(s)] = label;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
                if (removed && (*removed)[static_cast<std::size_t>(e)]) continue;
                if (comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = label;
                    q.push(v);
                }
            }
        }
        ++label;
    }
    return comp;
}

}  // namespace

bool operator==(const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v && a.cost == b.cost;
}

MulticutInstance::MulticutInstance(int num_vertices, std::vector<Edge> edges,
                                   std::vector<int> terminals)
    : num_vertices_(num_vertices), edges_(std::move(edges)), terminals_(std::move(terminals)) {
    if (num_vertices_ <= 0) throw ValidationError("instance needs a positive vertex count");
    std::set<std::pair<int, int>> seen;
    total_cost_ = 0.0;
    for (auto& e : edges_) {
        if (e.u < 0 || e.u >= num_vertices_ || e.v < 0 || e.v >= num_vertices_)
            throw ValidationError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
        if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!seen.emplace(e.u, e.v).second)
            throw ValidationError("duplicate edge (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
        if (!(e.cost >= 0.0))
            throw ValidationError("negative or non-finite cost on edge (" + std::to_string(e.u) +
                                  "," + std::to_string(e.v) + ")");
        total_cost_ += e.cost;
    }
    if (terminals_.size() < 2) throw ValidationError("need at least 2 terminals");
    std::sort(terminals_.begin(), terminals_.end());
    terminal_lookup_.assign(static_cast<std::size_t>(num_vertices_), 0);
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
        int t = terminals_[i];
        if (t < 0 || t >= num_vertices_)
            throw ValidationError("terminal out of range: " + std::to_string(t));
        if (i > 0 && terminals_[i - 1] == t)
            throw ValidationError("duplicate terminal " + std::to_string(t));
        terminal_lookup_[static_cast<std::size_t>(t)] = 1;
    }
    auto comp = components(num_vertices_, edges_);
    for (int v = 0; v < num_vertices_; ++v) {
        if (comp[static_cast<std::size_t>(v)] != 0)
            throw ValidationError("graph is not connected (vertex " + std::to_string(v) +
                                  " unreachable from 0)");
    }
}

bool operator==(const MulticutInstance& a, const MulticutInstance& b) {
    return a.num_vertices() == b.num_vertices() && a.edges() == b.edges() &&
           a.terminals() == b.terminals();
}

MulticutInstance generate_random_instance(int num_vertices, int num_edges, int k,
                                          std::pair<double, double> cost_range,
                                          std::uint64_t seed) {
    const int n = num_vertices;
    if (n <= 0) throw ValidationError("num_vertices must be positive");
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    if (num_edges < n - 1 || num_edges > max_edges)
        throw ValidationError("num_edges " + std::to_string(num_edges) +
                              " outside feasible range [" + std::to_string(n - 1) + ", " +
                              std::to_string(max_edges) + "]");
    if (k < 2 || k > n) throw ValidationError("k must be in [2, num_vertices]");
    if (!(cost_range.first >= 0.0) || cost_range.second < cost_range.first)
        throw ValidationError("cost_range must satisfy 0 <= lo <= hi");

    Rng rng(seed);

    // Random spanning tree over a random vertex ordering.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    std::vector<std::pair<int, int>> pairs;
    std::set<std::pair<int, int>> used;
    for (int i = 1; i < n; ++i) {
        int a = order[static_cast<std::size_t>(i)];
        int b = order[rng.bounded(static_cast<std::uint64_t>(i))];
        auto key = std::minmax(a, b);
        pairs.emplace_back(key.first, key.second);
        used.insert(key);
    }

    // Remaining edges drawn without replacement from the unused pairs.
    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!used.count({u, v})) candidates.emplace_back(u, v);
    int extra = num_edges - (n - 1);
    for (int i = 0; i < extra; ++i) {
        std::size_t pick = static_cast<std::size_t>(i) +
                           rng.bounded(static_cast<std::uint64_t>(candidates.size() - i));
        std::swap(candidates[static_cast<std::size_t>(i)], candidates[pick]);
        pairs.push_back(candidates[static_cast<std::size_t>(i)]);
    }

    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs)
        edges.push_back({u, v, rng.uniform(cost_range.first, cost_range.second)});

    std::vector<int> verts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) verts[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
        std::size_t pick = static_cast<std::size_t>(i) +
                           rng.bounded(static_cast<std::uint64_t>(n - i));
        std::swap(verts[static_cast<std::size_t>(i)], verts[pick]);
    }
    std::vector<int> terminals(verts.begin(), verts.begin() + k);

    return MulticutInstance(n, std::move(edges), std::move(terminals));
}

MulticutInstance parse_instance(std::istream& in, const std::string& name) {
    int line_no = 0;
    std::string line;
    int n = -1, m = -1, k = -1;
    std::vector<int> terminals;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "memc") {
            if (n != -1) throw ParseError(name + ": repeated header", line_no);
            if (!(ls >> n >> m >> k)) throw ParseError(name + ": bad header", line_no);
        } else if (tag == "t") {
            int t;
            if (n == -1) throw ParseError(name + ": terminal before header", line_no);
            if (!(ls >> t)) throw ParseError(name + ": bad terminal line", line_no);
            terminals.push_back(t);
        } else if (tag == "e") {
            Edge e;
            if (n == -1) throw ParseError(name + ": edge before header", line_no);
            if (!(ls >> e.u >> e.v >> e.cost)) throw ParseError(name + ": bad edge line", line_no);
            edges.push_back(e);
        } else {
            throw ParseError(name + ": unknown record '" + tag + "'", line_no);
        }
    }
    if (n == -1) throw ParseError(name + ": missing 'memc' header", line_no);
    if (static_cast<int>(terminals.size()) != k)
        throw ParseError(name + ": header declares " + std::to_string(k) + " terminals, found " +
                             std::to_string(terminals.size()),
                         line_no);
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(name + ": header declares " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()),
                         line_no);
    try {
        return MulticutInstance(n, std::move(edges), std::move(terminals));
    } catch (const ValidationError& err) {
        throw ValidationError(name + ": " + err.what());
    }
}

MulticutInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    return parse_instance(in, path);
}

void write_instance(const MulticutInstance& instance, std::ostream& out) {
    out << "memc " << instance.num_vertices() << ' ' << instance.edges().size() << ' '
        << instance.k() << '\n';
    for (int t : instance.terminals()) out << "t " << t << '\n';
    char buf[64];
    for (const auto& e : instance.edges()) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.cost);
        out << "e " << e.u << ' ' << e.v << ' ' << buf << '\n';
    }
}

void save_instance(const MulticutInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write instance file: " + path);
    write_instance(instance, out);
}

CutSolution validate_solution(const MulticutInstance& instance, const std::vector<int>& assignment) {
    const int n = instance.num_vertices();
    if (static_cast<int>(assignment.size()) != n)
        throw ValidationError("assignment must cover every vertex");
    for (int v = 0; v < n; ++v) {
        if (!instance.is_terminal(assignment[static_cast<std::size_t>(v)]))
            throw ValidationError("vertex " + std::to_string(v) +
                                  " assigned to non-terminal " +
                                  std::to_string(assignment[static_cast<std::size_t>(v)]));
    }
    for (int t : instance.terminals()) {
        if (assignment[static_cast<std::size_t>(t)] != t)
            throw InfeasibleSolutionError("terminal " + std::to_string(t) +
                                          " assigned to terminal " +
                                          std::to_string(assignment[static_cast<std::size_t>(t)]));
    }

    CutSolution sol;
    sol.assignment = assignment;
    std::vector<char> removed(instance.edges().size(), 0);
    for (std::size_t e = 0; e < instance.edges().size(); ++e) {
        const Edge& edge = instance.edges()[e];
        if (assignment[static_cast<std::size_t>(edge.u)] !=
            assignment[static_cast<std::size_t>(edge.v)]) {
            removed[e] = 1;
            sol.cut_edges.push_back(edge);
            sol.cut_cost += edge.cost;
        }
    }

    // Traversal check: no component of the remaining graph holds two terminals.
    auto comp = components(n, instance.edges(), &removed);
    std::vector<int> comp_terminal;
    for (int t : instance.terminals()) {
        int c = comp[static_cast<std::size_t>(t)];
        for (int seen : comp_terminal)
            if (seen == c)
                throw InfeasibleSolutionError("terminals share a component after cut removal");
        comp_terminal.push_back(c);
    }
    return sol;
}

MulticutInstance toy3() {
    return MulticutInstance(3, {{0, 1, 1.0}, {1, 2, 2.0}}, {0, 2});
}

MulticutInstance toy4() {
    return MulticutInstance(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}}, {0, 2});
}

}  // namespace memc
