#include "memc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "memc/classical.hpp"
#include "memc/errors.hpp"
#include "memc/photonic.hpp"
#include "memc/qaoa.hpp"
#include "memc/qubo.hpp"
#include "memc/rng.hpp"

namespace memc {

namespace {

constexpr double kHitTol = 1e-9;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

double get_double(const std::map<std::string, std::string>& kv, const std::string& key,
                  double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (...) {
        throw ValidationError("bad numeric value for '" + key + "': " + it->second);
    }
}

std::int64_t get_int(const std::map<std::string, std::string>& kv, const std::string& key,
                     std::int64_t fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (...) {
        throw ValidationError("bad integer value for '" + key + "': " + it->second);
    }
}

bool get_bool(const std::map<std::string, std::string>& kv, const std::string& key,
              bool fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ValidationError("bad boolean value for '" + key + "': " + it->second);
}

std::optional<double> get_opt_double(const std::map<std::string, std::string>& kv,
                                     const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return std::stod(it->second);
}

QuboModel build_model(const MulticutInstance& instance,
                      const std::map<std::string, std::string>& settings, bool default_reduced) {
    return build_qubo(instance, get_opt_double(settings, "alpha"),
                      get_bool(settings, "reduced", default_reduced));
}

// bitstring of the full one-hot encoding for a classical assignment
std::vector<std::uint8_t> encode_assignment(const MulticutInstance& instance,
                                            const std::vector<int>& assignment) {
    VariableIndex idx = VariableIndex::full(instance);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(idx.size()), 0);
    const auto& terms = idx.terminals();
    for (int v = 0; v < instance.num_vertices(); ++v) {
        int tpos = static_cast<int>(std::lower_bound(terms.begin(), terms.end(),
                                                     assignment[static_cast<std::size_t>(v)]) -
                                    terms.begin());
        bits[static_cast<std::size_t>(idx.index_of(v, tpos))] = 1;
    }
    return bits;
}

SolverReport report_from_cut(const MulticutInstance& instance, CutSolution cut,
                             const std::string& backend, std::int64_t evals) {
    SolverReport r;
    r.backend = backend;
    r.best_energy = cut.cut_cost;
    r.best_bitstring = encode_assignment(instance, cut.assignment);
    r.best_cut = std::move(cut);
    r.samples_evaluated = evals;
    return r;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void attach_cut(const MulticutInstance& instance, const QuboModel& model, SolverReport& report) {
    if (!model.has_index() || report.best_bitstring.empty()) return;
    auto decoded = decode_bitstring(model.index(), report.best_bitstring);
    if (decoded.feasible()) report.best_cut = validate_solution(instance, *decoded.assignment);
}

}  // namespace

SolverReport run_backend(const MulticutInstance& instance, const std::string& backend,
                         const std::map<std::string, std::string>& settings, std::uint64_t seed,
                         OptimizerTrace* trace_out) {
    const double t0 = now_seconds();
    SolverReport report;
    if (backend == "exact") {
        const int free_vertices = instance.num_vertices() - instance.k();
        std::int64_t combos = 1;
        for (int i = 0; i < free_vertices; ++i) combos *= instance.k();
        report = report_from_cut(instance, brute_force_partition(instance), "exact", combos);
    } else if (backend == "maxflow") {
        report = report_from_cut(instance, min_cut_k2(instance), "maxflow", 1);
    } else if (backend == "greedy") {
        report = report_from_cut(instance, greedy_isolation(instance), "greedy", instance.k());
    } else if (backend == "sa") {
        QuboModel model = build_model(instance, settings, false);
        AnnealSchedule schedule = AnnealSchedule::defaults_for(instance);
        schedule.initial_temperature = get_double(settings, "t0", schedule.initial_temperature);
        schedule.final_temperature = get_double(settings, "tf", schedule.final_temperature);
        schedule.sweeps = static_cast<int>(get_int(settings, "sweeps", schedule.sweeps));
        auto cooling = settings.find("cooling");
        if (cooling != settings.end()) {
            if (cooling->second == "linear")
                schedule.cooling = AnnealSchedule::Cooling::Linear;
            else if (cooling->second == "geometric")
                schedule.cooling = AnnealSchedule::Cooling::Geometric;
            else
                throw ValidationError("unknown cooling '" + cooling->second + "'");
        }
        int reads = static_cast<int>(get_int(settings, "reads", 100));
        report = simulated_annealing(model, schedule, reads, seed);
        attach_cut(instance, model, report);
    } else if (backend == "qaoa") {
        QuboModel model = build_model(instance, settings, false);
        QaoaConfig config;
        config.depth = static_cast<int>(get_int(settings, "depth", 1));
        config.max_evaluations = static_cast<int>(get_int(settings, "max_evals", 1000));
        config.final_shots = static_cast<int>(get_int(settings, "shots", 4000));
        report = qaoa_optimize(model, config, seed, trace_out);
        attach_cut(instance, model, report);
    } else if (backend == "photonic") {
        QuboModel model = build_model(instance, settings, true);
        PhotonicConfig config;
        config.max_evaluations = static_cast<int>(get_int(settings, "max_evals", 1500));
        config.final_shots = static_cast<int>(get_int(settings, "shots", 10000));
        config.shot_objective = get_bool(settings, "shot_objective", false);
        config.objective_shots = static_cast<int>(get_int(settings, "objective_shots", 10000));
        report = photonic_optimize(model, config, seed, trace_out);
        attach_cut(instance, model, report);
    } else {
        throw ValidationError("unknown backend '" + backend + "'");
    }
    report.seed = seed;
    report.wall_seconds = now_seconds() - t0;
    return report;
}

BenchmarkConfig BenchmarkConfig::parse(std::istream& in, const std::string& name) {
    BenchmarkConfig config;
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string section = "suite";
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError(name + ": unterminated section header", line_no);
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw ParseError(name + ": empty section name", line_no);
            sections[section];
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(name + ": expected key=value", line_no);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ParseError(name + ": empty key", line_no);
        sections[section][key] = value;
    }

    const auto& inst = sections["instances"];
    config.count = static_cast<int>(get_int(inst, "count", 0));
    config.min_vertices = static_cast<int>(get_int(inst, "min_vertices", 4));
    config.max_vertices = static_cast<int>(get_int(inst, "max_vertices", config.min_vertices));
    config.k = static_cast<int>(get_int(inst, "k", 2));
    config.edge_factor = get_double(inst, "edge_factor", 1.5);
    config.cost_min = get_double(inst, "cost_min", 1.0);
    config.cost_max = get_double(inst, "cost_max", 10.0);
    config.base_seed = static_cast<std::uint64_t>(get_int(inst, "base_seed", 0));
    if (auto it = inst.find("fixtures"); it != inst.end()) config.fixtures = split(it->second, ',');

    const auto& suite = sections["suite"];
    if (auto it = suite.find("backends"); it != suite.end())
        config.backends = split(it->second, ',');
    config.workers = static_cast<int>(get_int(suite, "workers", 1));
    config.global_seed = static_cast<std::uint64_t>(get_int(suite, "global_seed", 0));

    for (const auto& [sec, kv] : sections) {
        if (sec.rfind("backend ", 0) == 0) {
            std::string backend = trim(sec.substr(8));
            config.backend_settings[backend] = kv;
        }
    }
    config.validate();
    return config;
}

BenchmarkConfig BenchmarkConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    return parse(in, path);
}

void BenchmarkConfig::validate() const {
    if (backends.empty()) throw ValidationError("config lists no backends");
    if (count <= 0 && fixtures.empty())
        throw ValidationError("config describes no instances (count = 0, no fixtures)");
    if (count > 0) {
        if (min_vertices < 2 || max_vertices < min_vertices)
            throw ValidationError("bad vertex range in config");
        if (k < 2 || k > min_vertices) throw ValidationError("bad k in config");
        if (!(cost_min >= 0.0) || cost_max < cost_min)
            throw ValidationError("bad cost range in config");
    }
    if (workers < 1) throw ValidationError("workers must be >= 1");
    for (const auto& b : backends)
        if (b != "exact" && b != "maxflow" && b != "greedy" && b != "sa" && b != "qaoa" &&
            b != "photonic")
            throw ValidationError("unknown backend '" + b + "' in config");
}

std::vector<std::pair<std::string, MulticutInstance>> BenchmarkConfig::make_instances() const {
    std::vector<std::pair<std::string, MulticutInstance>> out;
    for (const auto& f : fixtures) {
        if (f == "toy3")
            out.emplace_back("toy3", toy3());
        else if (f == "toy4")
            out.emplace_back("toy4", toy4());
        else
            throw ValidationError("unknown fixture '" + f + "'");
    }
    const int span = max_vertices - min_vertices + 1;
    for (int i = 0; i < count; ++i) {
        const int v = min_vertices + (i % span);
        const long long max_edges = static_cast<long long>(v) * (v - 1) / 2;
        long long e = std::llround(edge_factor * v);
        e = std::clamp<long long>(e, v - 1, max_edges);
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
        char id[64];
        std::snprintf(id, sizeof(id), "v%02de%02dk%ds%03llu", v, static_cast<int>(e), k,
                      static_cast<unsigned long long>(seed));
        out.emplace_back(id, generate_random_instance(v, static_cast<int>(e), k,
                                                      {cost_min, cost_max}, seed));
    }
    return out;
}

namespace {

// exact optimum for gap computation: full enumeration when it fits, otherwise
// max-flow for k = 2
double oracle_optimum(const MulticutInstance& instance) {
    try {
        return brute_force_partition(instance).cut_cost;
    } catch (const CapacityError&) {
        if (instance.k() == 2) return min_cut_k2(instance).cut_cost;
        throw;
    }
}

BenchmarkRecord run_row(const MulticutInstance& instance, const std::string& instance_id,
                        const std::string& backend, const BenchmarkConfig& config,
                        std::uint64_t seed) {
    BenchmarkRecord rec;
    rec.instance_id = instance_id;
    rec.backend = backend;
    rec.num_vertices = instance.num_vertices();
    rec.seed = seed;
    rec.opt_energy = oracle_optimum(instance);

    std::map<std::string, std::string> settings;
    if (auto it = config.backend_settings.find(backend); it != config.backend_settings.end())
        settings = it->second;
    try {
        if (backend == "maxflow" && instance.k() != 2) {
            rec.skipped = true;
            rec.skip_reason = "maxflow requires k=2";
            return rec;
        }
        SolverReport report = run_backend(instance, backend, settings, seed);
        rec.best_energy = report.best_energy;
        rec.wall_ms = report.wall_seconds * 1e3;
        rec.evals = report.samples_evaluated;
        rec.opt_prob = report.optimal_sampling_probability;
        const double diff = rec.best_energy - rec.opt_energy;
        if (rec.opt_energy > 1e-12) {
            rec.gap = std::max(0.0, diff / rec.opt_energy);
        } else {
            rec.gap = std::max(0.0, diff);  // absolute when the optimum is zero
        }
        rec.hit = std::abs(diff) <= kHitTol;
    } catch (const CapacityError& err) {
        rec.skipped = true;
        rec.skip_reason = err.what();
    }
    return rec;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double quantile_lower(std::vector<double> values, double p) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t idx =
        static_cast<std::size_t>(std::floor(p * static_cast<double>(values.size() - 1)));
    return values[idx];
}

}  // namespace

std::vector<BenchmarkRecord> run_suite(const BenchmarkConfig& config) {
    config.validate();
    auto instances = config.make_instances();

    struct Row {
        std::size_t instance_index;
        std::string backend;
        std::uint64_t seed;
    };
    std::vector<Row> rows;
    std::size_t row_index = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const auto& backend : config.backends) {
            rows.push_back({i, backend, derive_seed(config.global_seed, row_index)});
            ++row_index;
        }
    }

    std::vector<BenchmarkRecord> records(rows.size());
    const int workers = std::min<int>(config.workers, static_cast<int>(rows.size()));
    if (workers <= 1) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto& row = rows[r];
            records[r] = run_row(instances[row.instance_index].second,
                                 instances[row.instance_index].first, row.backend, config,
                                 row.seed);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t r = next.fetch_add(1);
                    if (r >= rows.size()) return;
                    const auto& row = rows[r];
                    records[r] = run_row(instances[row.instance_index].second,
                                         instances[row.instance_index].first, row.backend,
                                         config, row.seed);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<BenchmarkRecord>& records) {
    if (records.empty()) throw ValidationError("summarize needs at least one record");
    std::map<std::pair<std::string, std::string>, std::vector<const BenchmarkRecord*>> groups;
    for (const auto& rec : records) {
        const std::string bucket = rec.num_vertices <= 10 ? "small" : "large";
        groups[{rec.backend, bucket}].push_back(&rec);
    }
    std::vector<SummaryRow> out;
    for (const auto& [key, group] : groups) {
        SummaryRow row;
        row.backend = key.first;
        row.bucket = key.second;
        std::vector<double> gaps;
        std::vector<double> probs;
        std::vector<double> walls;
        int hits = 0, live = 0;
        for (const auto* rec : group) {
            if (rec->skipped) {
                ++row.skipped;
                continue;
            }
            ++live;
            if (rec->hit) ++hits;
            gaps.push_back(rec->gap);
            if (rec->opt_prob) probs.push_back(*rec->opt_prob);
            if (rec->wall_ms > 0.0) walls.push_back(rec->wall_ms);
        }
        row.rows = live;
        row.hit_rate = live > 0 ? static_cast<double>(hits) / live : 0.0;
        row.gap_median = quantile_lower(gaps, 0.5);
        row.gap_q1 = quantile_lower(gaps, 0.25);
        row.gap_q3 = quantile_lower(gaps, 0.75);
        if (!probs.empty()) {
            double s = 0.0;
            for (double p : probs) s += p;
            row.mean_opt_prob = s / static_cast<double>(probs.size());
        }
        if (!walls.empty()) {
            double s = 0.0;
            for (double w : walls) s += w;
            row.mean_wall_ms = s / static_cast<double>(walls.size());
        }
        out.push_back(std::move(row));
    }
    return out;  // map iteration already sorts by (backend, bucket)
}

void write_records_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out) {
    out << "instance,backend,best_energy,opt_energy,gap,hit,opt_prob,evals,wall_ms,seed\n";
    for (const auto& r : records) {
        out << r.instance_id << ',' << r.backend << ',';
        if (!r.skipped) out << format_double(r.best_energy);
        out << ',' << format_double(r.opt_energy) << ',';
        if (!r.skipped) out << format_double(r.gap);
        out << ',';
        out << (r.skipped ? "skip" : (r.hit ? "1" : "0")) << ',';
        if (r.opt_prob) out << format_double(*r.opt_prob);
        out << ',' << r.evals << ',';
        // wall_ms deliberately empty: timing lives in the metadata sidecar
        out << ',' << r.seed << '\n';
    }
}

void write_records_json(const std::vector<BenchmarkRecord>& records, std::ostream& out) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["instance"] = r.instance_id;
        j["backend"] = r.backend;
        j["best_energy"] = r.skipped ? nlohmann::ordered_json() : nlohmann::ordered_json(r.best_energy);
        j["opt_energy"] = r.opt_energy;
        j["gap"] = r.skipped ? nlohmann::ordered_json() : nlohmann::ordered_json(r.gap);
        if (r.skipped)
            j["hit"] = "skip";
        else
            j["hit"] = r.hit;
        j["opt_prob"] = r.opt_prob ? nlohmann::ordered_json(*r.opt_prob) : nlohmann::ordered_json();
        j["evals"] = r.evals;
        j["wall_ms"] = nlohmann::ordered_json();
        j["seed"] = r.seed;
        if (r.skipped) j["skip_reason"] = r.skip_reason;
        rows.push_back(std::move(j));
    }
    out << rows.dump(2) << '\n';
}

void write_meta_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out) {
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
    out << "# generated " << stamp << "Z\n";
    out << "instance,backend,wall_ms\n";
    for (const auto& r : records)
        out << r.instance_id << ',' << r.backend << ',' << format_double(r.wall_ms) << '\n';
}

std::vector<BenchmarkRecord> read_records_csv(std::istream& in, const std::string& name) {
    std::vector<BenchmarkRecord> records;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;  // header row
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        while (cells.size() < 10) cells.push_back("");
        if (cells.size() != 10) throw ParseError(name + ": expected 10 columns", line_no);
        BenchmarkRecord r;
        r.instance_id = cells[0];
        r.backend = cells[1];
        r.skipped = cells[5] == "skip";
        try {
            if (!r.skipped && !cells[2].empty()) r.best_energy = std::stod(cells[2]);
            if (!cells[3].empty()) r.opt_energy = std::stod(cells[3]);
            if (!r.skipped && !cells[4].empty()) r.gap = std::stod(cells[4]);
            r.hit = cells[5] == "1";
            if (!cells[6].empty()) r.opt_prob = std::stod(cells[6]);
            if (!cells[7].empty()) r.evals = std::stoll(cells[7]);
            if (!cells[8].empty()) r.wall_ms = std::stod(cells[8]);
            if (!cells[9].empty()) r.seed = std::stoull(cells[9]);
        } catch (const std::exception&) {
            throw ParseError(name + ": bad numeric cell", line_no);
        }
        // recover the vertex count for bucketing
        if (r.instance_id == "toy3")
            r.num_vertices = 3;
        else if (r.instance_id == "toy4")
            r.num_vertices = 4;
        else if (r.instance_id.size() > 1 && r.instance_id[0] == 'v')
            r.num_vertices = std::atoi(r.instance_id.c_str() + 1);
        records.push_back(std::move(r));
    }
    if (!header_seen) throw ParseError(name + ": empty records file", line_no);
    return records;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
    out << "backend,bucket,rows,skipped,hit_rate,gap_median,gap_q1,gap_q3,mean_opt_prob,"
           "mean_wall_ms\n";
    for (const auto& r : rows) {
        out << r.backend << ',' << r.bucket << ',' << r.rows << ',' << r.skipped << ','
            << format_double(r.hit_rate) << ',' << format_double(r.gap_median) << ','
            << format_double(r.gap_q1) << ',' << format_double(r.gap_q3) << ',';
        if (r.mean_opt_prob) out << format_double(*r.mean_opt_prob);
        out << ',';
        if (r.mean_wall_ms) out << format_double(*r.mean_wall_ms);
        out << '\n';
    }
}

}  // namespace memc
