#include "memc/solver_report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace memc {

namespace {

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace

bool better_result(double energy_a, const std::vector<std::uint8_t>& bits_a, double energy_b,
                   const std::vector<std::uint8_t>& bits_b) {
    if (energy_a != energy_b) return energy_a < energy_b;
    if (bits_b.empty()) return !bits_a.empty();
    return bits_a < bits_b;  // lexicographic over x_0, x_1, ...
}

std::string SolverReport::to_json() const {
    nlohmann::ordered_json j;
    j["backend"] = backend;
    j["seed"] = seed;
    j["best_energy"] = best_energy;
    j["best_bitstring"] = bits_to_string(best_bitstring);
    j["samples_evaluated"] = samples_evaluated;
    j["converged"] = converged;
    if (expectation) j["expectation"] = *expectation;
    if (optimal_sampling_probability) j["opt_prob"] = *optimal_sampling_probability;
    if (best_params) j["best_params"] = *best_params;
    if (best_cut) {
        nlohmann::ordered_json cut;
        cut["cut_cost"] = best_cut->cut_cost;
        nlohmann::ordered_json edges = nlohmann::ordered_json::array();
        for (const auto& e : best_cut->cut_edges) edges.push_back({e.u, e.v, e.cost});
        cut["cut_edges"] = edges;
        cut["assignment"] = best_cut->assignment;
        j["cut"] = cut;
    }
    return j.dump(2);
}

std::string SolverReport::to_text() const {
    std::ostringstream out;
    char buf[64];
    out << "backend: " << backend << "\n";
    std::snprintf(buf, sizeof(buf), "%.10g", best_energy);
    out << "best_energy: " << buf << "\n";
    if (!best_bitstring.empty()) out << "best_bitstring: " << bits_to_string(best_bitstring) << "\n";
    if (best_cut) {
        std::snprintf(buf, sizeof(buf), "%.10g", best_cut->cut_cost);
        out << "cut_cost: " << buf << "\n";
        out << "cut_edges:";
        for (const auto& e : best_cut->cut_edges) {
            std::snprintf(buf, sizeof(buf), "%.10g", e.cost);
            out << " (" << e.u << "," << e.v << ")=" << buf;
        }
        out << "\n";
        out << "assignment:";
        for (std::size_t v = 0; v < best_cut->assignment.size(); ++v)
            out << ' ' << v << "->" << best_cut->assignment[v];
        out << "\n";
    }
    if (expectation) {
        std::snprintf(buf, sizeof(buf), "%.10g", *expectation);
        out << "expectation: " << buf << "\n";
    }
    if (optimal_sampling_probability) {
        std::snprintf(buf, sizeof(buf), "%.10g", *optimal_sampling_probability);
        out << "opt_prob: " << buf << "\n";
    }
    out << "samples_evaluated: " << samples_evaluated << "\n";
    out << "converged: " << (converged ? "true" : "false") << "\n";
    out << "seed: " << seed << "\n";
    return out.str();
}

}  // namespace memc
