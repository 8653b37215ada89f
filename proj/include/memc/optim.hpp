#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace memc {

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerConfig {
    enum class Method { NelderMead, GridScan, RandomSearch };

    Method method = Method::NelderMead;
    int max_evaluations = 1000;   // objective evaluations, not iterations
    double tolerance = 1e-8;      // simplex value spread / plateau
    std::optional<std::vector<std::pair<double, double>>> bounds;
    std::uint64_t seed = 0;

    void validate(int dimensions) const;
};

struct TraceEntry {
    int eval = 0;  // 1-based evaluation counter
    std::vector<double> params;
    double value = 0.0;
    double best_so_far = 0.0;
};

struct OptimizerTrace {
    std::vector<TraceEntry> entries;
};

struct OptimizeResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    bool converged = false;
    int evaluations = 0;
    OptimizerTrace trace;
};

// Nelder-Mead with the standard coefficients (reflect 1, expand 2, contract
// 0.5, shrink 0.5). Initial simplex: the start point plus one vertex per axis
// stepped by 5% of the bound width (0.1 when unbounded). Proposals are
// clamped to the bounds. Non-finite objective values count as +inf.
OptimizeResult nelder_mead(const Objective& objective, std::vector<double> initial,
                           const OptimizerConfig& config);

// Exhaustive cartesian scan; ties keep the lexicographically first grid point.
OptimizeResult grid_scan(const Objective& objective,
                         const std::vector<std::vector<double>>& grids);

OptimizeResult random_search(const Objective& objective,
                             const std::vector<std::pair<double, double>>& bounds,
                             const OptimizerConfig& config);

// CSV columns: eval,param_0..param_d,objective,best_so_far
void write_trace_csv(const OptimizerTrace& trace, std::ostream& out);

}  // namespace memc
