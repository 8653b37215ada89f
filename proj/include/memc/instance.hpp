#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace memc {

struct Edge {
    int u = 0;
    int v = 0;
    double cost = 0.0;
};

bool operator==(const Edge& a, const Edge& b);

// Minimum edge multiway cut instance: an undirected connected graph with
// non-negative edge costs and k >= 2 distinguished terminal vertices.
// Immutable after construction; the constructor validates every invariant
// (connectivity, no self-loops or duplicate edges, distinct valid terminals).
class MulticutInstance {
public:
    MulticutInstance(int num_vertices, std::vector<Edge> edges, std::vector<int> terminals);

    int num_vertices() const { return num_vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& terminals() const { return terminals_; }  // ascending
    int k() const { return static_cast<int>(terminals_.size()); }
    bool is_terminal(int v) const { return terminal_lookup_[static_cast<std::size_t>(v)] != 0; }
    double total_edge_cost() const { return total_cost_; }

private:
    int num_vertices_;
    std::vector<Edge> edges_;       // normalized u < v, original order
    std::vector<int> terminals_;    // sorted ascending
    std::vector<char> terminal_lookup_;
    double total_cost_;
};

bool operator==(const MulticutInstance& a, const MulticutInstance& b);

// A multiway cut described by a full vertex -> terminal assignment.
// cut_edges are exactly the edges whose endpoints land on different terminals.
struct CutSolution {
    std::vector<int> assignment;  // vertex id -> terminal id
    std::vector<Edge> cut_edges;
    double cut_cost = 0.0;
};

// Connected graph built from a random spanning tree plus extra edges; costs
// uniform in cost_range, k terminals sampled without replacement. Pure
// function of its arguments.
MulticutInstance generate_random_instance(int num_vertices, int num_edges, int k,
                                          std::pair<double, double> cost_range,
                                          std::uint64_t seed);

// Line-oriented text format:
//   # comment
//   memc <num_vertices> <num_edges> <k>
//   t <vertex>           (k lines)
//   e <u> <v> <cost>     (num_edges lines)
MulticutInstance parse_instance(std::istream& in, const std::string& name = "<stream>");
MulticutInstance load_instance(const std::string& path);
void write_instance(const MulticutInstance& instance, std::ostream& out);
void save_instance(const MulticutInstance& instance, const std::string& path);

// Recomputes cut edges and cost from an assignment and checks that removing
// them separates every terminal pair. Throws InfeasibleSolutionError if a
// terminal is assigned elsewhere, ValidationError on malformed input.
CutSolution validate_solution(const MulticutInstance& instance, const std::vector<int>& assignment);

// Canonical fixtures.
// toy3: path 0 - 1 - 2 with costs 1 and 2, terminals {0, 2}; optimum 1.
// toy4: 4-cycle 0 - 1 - 2 - 3 - 0, unit costs, terminals {0, 2}; optimum 2.
MulticutInstance toy3();
MulticutInstance toy4();

}  // namespace memc
