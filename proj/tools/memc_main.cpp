#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "memc/bench.hpp"
#include "memc/classical.hpp"
#include "memc/errors.hpp"
#include "memc/instance.hpp"
#include "memc/photonic.hpp"
#include "memc/qaoa.hpp"
#include "memc/qubo.hpp"

namespace {

struct GenOptions {
    int vertices = 8;
    int edges = 12;
    int k = 2;
    double cost_min = 1.0;
    double cost_max = 10.0;
    std::uint64_t seed = 0;
    int count = 1;
    std::string fixture;
    std::string out = "instance.memc";
};

struct SolveOptions {
    std::string path;
    std::string backend = "exact";
    std::uint64_t seed = 0;
    int shots = 0;  // 0 = backend default
    int depth = 1;
    double alpha = 0.0;  // 0 = default penalty
    std::string format = "text";
    bool reduced = false;
    bool full = false;
    int max_evals = 0;  // 0 = backend default
    std::string trace_path;
    std::string dump_qubo_path;
    std::string dump_circuit_path;
};

int run_gen(const GenOptions& opt) {
    if (!opt.fixture.empty()) {
        memc::MulticutInstance instance =
            opt.fixture == "toy3" ? memc::toy3()
            : opt.fixture == "toy4"
                ? memc::toy4()
                : throw memc::ValidationError("unknown fixture '" + opt.fixture + "'");
        memc::save_instance(instance, opt.out);
        std::cout << "wrote " << opt.out << "\n";
        return 0;
    }
    if (opt.count == 1) {
        memc::save_instance(memc::generate_random_instance(
                                opt.vertices, opt.edges, opt.k, {opt.cost_min, opt.cost_max},
                                opt.seed),
                            opt.out);
        std::cout << "wrote " << opt.out << "\n";
        return 0;
    }
    std::filesystem::create_directories(opt.out);
    for (int i = 0; i < opt.count; ++i) {
        const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(i);
        char name[64];
        std::snprintf(name, sizeof(name), "v%02de%02dk%ds%03llu.memc", opt.vertices, opt.edges,
                      opt.k, static_cast<unsigned long long>(seed));
        const std::string path = (std::filesystem::path(opt.out) / name).string();
        memc::save_instance(memc::generate_random_instance(opt.vertices, opt.edges, opt.k,
                                                           {opt.cost_min, opt.cost_max}, seed),
                            path);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

int run_solve(const SolveOptions& opt) {
    memc::MulticutInstance instance = memc::load_instance(opt.path);

    std::map<std::string, std::string> settings;
    if (opt.alpha > 0.0) settings["alpha"] = std::to_string(opt.alpha);
    if (opt.reduced) settings["reduced"] = "true";
    if (opt.full) settings["reduced"] = "false";
    if (opt.shots > 0) settings["shots"] = std::to_string(opt.shots);
    if (opt.max_evals > 0) settings["max_evals"] = std::to_string(opt.max_evals);
    settings["depth"] = std::to_string(opt.depth);

    const bool default_reduced = opt.backend == "photonic" && !opt.full;
    if (!opt.dump_qubo_path.empty()) {
        memc::QuboModel model =
            memc::build_qubo(instance,
                             opt.alpha > 0.0 ? std::optional<double>(opt.alpha) : std::nullopt,
                             opt.reduced || default_reduced);
        std::ofstream out(opt.dump_qubo_path);
        if (!out) throw memc::ValidationError("cannot write " + opt.dump_qubo_path);
        model.write(out);
    }

    memc::OptimizerTrace trace;
    memc::SolverReport report =
        memc::run_backend(instance, opt.backend, settings, opt.seed,
                          opt.trace_path.empty() ? nullptr : &trace);

    if (!opt.trace_path.empty()) {
        std::ofstream out(opt.trace_path);
        if (!out) throw memc::ValidationError("cannot write " + opt.trace_path);
        memc::write_trace_csv(trace, out);
    }
    if (!opt.dump_circuit_path.empty()) {
        if (opt.backend != "photonic" || !report.best_params)
            throw memc::ValidationError("--dump-circuit needs the photonic backend");
        memc::QuboModel model = memc::build_qubo(
            instance, opt.alpha > 0.0 ? std::optional<double>(opt.alpha) : std::nullopt, true);
        auto circuit = memc::build_generic_interferometer(model.size());
        std::ofstream out(opt.dump_circuit_path);
        if (!out) throw memc::ValidationError("cannot write " + opt.dump_circuit_path);
        circuit.write(out, *report.best_params);
    }

    if (opt.format == "json") {
        std::cout << report.to_json() << "\n";
    } else {
        std::cout << report.to_text();
    }
    std::cerr << "wall_ms " << report.wall_seconds * 1e3 << "\n";
    return 0;
}

int run_bench(const std::string& config_path, const std::string& out_dir) {
    memc::BenchmarkConfig config = memc::BenchmarkConfig::load(config_path);
    auto records = memc::run_suite(config);
    std::filesystem::create_directories(out_dir);
    auto open = [&](const std::string& name) {
        std::ofstream out(std::filesystem::path(out_dir) / name);
        if (!out) throw memc::ValidationError("cannot write " + name + " in " + out_dir);
        return out;
    };
    {
        auto out = open("report.csv");
        memc::write_records_csv(records, out);
    }
    {
        auto out = open("report.json");
        memc::write_records_json(records, out);
    }
    {
        auto out = open("report_meta.csv");
        memc::write_meta_csv(records, out);
    }
    std::cout << "wrote " << records.size() << " rows to " << out_dir << "/report.csv\n";
    return 0;
}

int run_report(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw memc::ValidationError("cannot open records file: " + in_path);
    auto records = memc::read_records_csv(in, in_path);
    auto summary = memc::summarize(records);
    if (out_path.empty() || out_path == "-") {
        memc::write_summary_csv(summary, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw memc::ValidationError("cannot write " + out_path);
        memc::write_summary_csv(summary, out);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum edge multiway cut: QUBO encodings and solver backends"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate instance files");
    gen_cmd->add_option("-v,--vertices", gen.vertices, "number of vertices");
    gen_cmd->add_option("-e,--edges", gen.edges, "number of edges");
    gen_cmd->add_option("-k,--terminals", gen.k, "number of terminals");
    gen_cmd->add_option("--cost-min", gen.cost_min, "minimum edge cost");
    gen_cmd->add_option("--cost-max", gen.cost_max, "maximum edge cost");
    gen_cmd->add_option("-s,--seed", gen.seed, "generator seed");
    gen_cmd->add_option("-n,--count", gen.count, "emit a family of this size");
    gen_cmd->add_option("--fixture", gen.fixture, "write a named fixture (toy3, toy4)");
    gen_cmd->add_option("-o,--out", gen.out, "output file (or directory with --count > 1)");

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance with one backend");
    solve_cmd->add_option("instance", solve.path, "instance file")->required();
    solve_cmd
        ->add_option("-b,--backend", solve.backend,
                     "exact|maxflow|greedy|sa|qaoa|photonic")
        ->check(CLI::IsMember({"exact", "maxflow", "greedy", "sa", "qaoa", "photonic"}));
    solve_cmd->add_option("-s,--seed", solve.seed, "solver seed");
    solve_cmd->add_option("--shots", solve.shots, "final sampling shots");
    solve_cmd->add_option("--depth", solve.depth, "QAOA depth p");
    solve_cmd->add_option("--alpha", solve.alpha, "QUBO penalty weight");
    solve_cmd->add_option("--max-evals", solve.max_evals, "optimizer evaluation budget");
    solve_cmd->add_flag("--reduced", solve.reduced, "terminal-eliminated encoding");
    solve_cmd->add_flag("--full", solve.full, "force the full encoding (photonic defaults to reduced)");
    solve_cmd->add_option("-f,--format", solve.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    solve_cmd->add_option("--trace", solve.trace_path, "write p=1 grid-scan trace CSV (qaoa)");
    solve_cmd->add_option("--dump-qubo", solve.dump_qubo_path, "write the QUBO text export");
    solve_cmd->add_option("--dump-circuit", solve.dump_circuit_path,
                          "write the optimized circuit dump (photonic)");

    std::string bench_config, bench_out = "bench_out";
    auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite from a config file");
    bench_cmd->add_option("-c,--config", bench_config, "suite config file")->required();
    bench_cmd->add_option("-o,--out-dir", bench_out, "output directory");

    std::string report_in, report_out;
    auto* report_cmd = app.add_subcommand("report", "summarize a records CSV");
    report_cmd->add_option("-i,--in", report_in, "records CSV (from bench)")->required();
    report_cmd->add_option("-o,--out", report_out, "summary CSV ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*solve_cmd) return run_solve(solve);
        if (*bench_cmd) return run_bench(bench_config, bench_out);
        if (*report_cmd) return run_report(report_in, report_out);
    } catch (const memc::CapacityError& err) {
        std::cerr << "capacity error: " << err.what() << "\n";
        return 2;
    } catch (const memc::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
