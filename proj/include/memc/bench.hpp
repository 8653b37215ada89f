#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memc/instance.hpp"
#include "memc/optim.hpp"
#include "memc/solver_report.hpp"

namespace memc {

// One backend run on one instance, given as a flat key=value map (parsed from
// a config section or assembled from CLI flags). Recognized keys per backend:
//   all:      alpha, reduced
//   sa:       sweeps, reads, t0, tf, cooling
//   qaoa:     depth, max_evals, shots
//   photonic: max_evals, shots, shot_objective
// trace_out receives the optimizer trace for the variational backends.
SolverReport run_backend(const MulticutInstance& instance, const std::string& backend,
                         const std::map<std::string, std::string>& settings, std::uint64_t seed,
                         OptimizerTrace* trace_out = nullptr);

struct BenchmarkConfig {
    // generated instance family; sizes cycle over [min_vertices, max_vertices]
    int count = 0;
    int min_vertices = 4;
    int max_vertices = 10;
    int k = 2;
    double edge_factor = 1.5;
    double cost_min = 1.0;
    double cost_max = 10.0;
    std::uint64_t base_seed = 0;
    std::vector<std::string> fixtures;  // toy3 / toy4, prepended to the family

    std::vector<std::string> backends;
    std::map<std::string, std::map<std::string, std::string>> backend_settings;
    int workers = 1;
    std::uint64_t global_seed = 0;

    static BenchmarkConfig parse(std::istream& in, const std::string& name = "<config>");
    static BenchmarkConfig load(const std::string& path);
    void validate() const;

    std::vector<std::pair<std::string, MulticutInstance>> make_instances() const;
};

struct BenchmarkRecord {
    std::string instance_id;
    std::string backend;
    int num_vertices = 0;
    double best_energy = 0.0;
    double opt_energy = 0.0;
    double gap = 0.0;
    bool hit = false;
    std::optional<double> opt_prob;
    std::int64_t evals = 0;
    double wall_ms = 0.0;  // in-memory only; the CSV keeps this column empty
    std::uint64_t seed = 0;
    bool skipped = false;
    std::string skip_reason;
};

// Every (instance, backend) pair, instance-major order; each row gets a seed
// derived from (global_seed, row index). Capacity errors become skipped rows.
std::vector<BenchmarkRecord> run_suite(const BenchmarkConfig& config);

struct SummaryRow {
    std::string backend;
    std::string bucket;  // "small" (|V| <= 10) or "large"
    int rows = 0;
    int skipped = 0;
    double hit_rate = 0.0;
    double gap_median = 0.0;
    double gap_q1 = 0.0;
    double gap_q3 = 0.0;
    std::optional<double> mean_opt_prob;
    std::optional<double> mean_wall_ms;
};

// Quantiles use the lower-interpolation rule: sorted[floor(p * (n - 1))].
std::vector<SummaryRow> summarize(const std::vector<BenchmarkRecord>& records);

// Deterministic report: header
//   instance,backend,best_energy,opt_energy,gap,hit,opt_prob,evals,wall_ms,seed
// Timing stays out of it (wall_ms column empty) so reruns are byte-identical;
// measured times go to the metadata sidecar.
void write_records_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out);
void write_records_json(const std::vector<BenchmarkRecord>& records, std::ostream& out);
void write_meta_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out);
std::vector<BenchmarkRecord> read_records_csv(std::istream& in,
                                              const std::string& name = "<records>");
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace memc
