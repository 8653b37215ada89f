#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "memc/bench.hpp"
#include "memc/classical.hpp"
#include "memc/errors.hpp"
#include "memc/instance.hpp"
#include "memc/optim.hpp"
#include "memc/photonic.hpp"
#include "memc/qaoa.hpp"
#include "memc/qubo.hpp"

namespace py = pybind11;
using namespace memc;

namespace {

QaoaParams make_params(const std::vector<double>& gammas, const std::vector<double>& betas) {
    QaoaParams params{gammas, betas};
    params.validate();
    return params;
}

std::string instance_repr(const MulticutInstance& inst) {
    std::ostringstream out;
    out << "MulticutInstance(|V|=" << inst.num_vertices() << ", |E|=" << inst.edges().size()
        << ", k=" << inst.k() << ")";
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_memcut, m) {
    m.doc() = "Minimum edge multiway cut: QUBO/Ising encodings and solver backends";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

    py::class_<Edge>(m, "Edge")
        .def(py::init<int, int, double>(), py::arg("u"), py::arg("v"), py::arg("cost"))
        .def_readonly("u", &Edge::u)
        .def_readonly("v", &Edge::v)
        .def_readonly("cost", &Edge::cost)
        .def("__repr__", [](const Edge& e) {
            std::ostringstream out;
            out << "Edge(" << e.u << ", " << e.v << ", " << e.cost << ")";
            return out.str();
        });

    py::class_<MulticutInstance>(m, "MulticutInstance")
        .def(py::init<int, std::vector<Edge>, std::vector<int>>(), py::arg("num_vertices"),
             py::arg("edges"), py::arg("terminals"))
        .def_property_readonly("num_vertices", &MulticutInstance::num_vertices)
        .def_property_readonly("edges", &MulticutInstance::edges)
        .def_property_readonly("terminals", &MulticutInstance::terminals)
        .def_property_readonly("k", &MulticutInstance::k)
        .def_property_readonly("total_edge_cost", &MulticutInstance::total_edge_cost)
        .def("is_terminal", &MulticutInstance::is_terminal)
        .def("__eq__", [](const MulticutInstance& a, const MulticutInstance& b) { return a == b; })
        .def("__repr__", &instance_repr);

    py::class_<CutSolution>(m, "CutSolution")
        .def_readonly("assignment", &CutSolution::assignment)
        .def_readonly("cut_edges", &CutSolution::cut_edges)
        .def_readonly("cut_cost", &CutSolution::cut_cost);

    m.def("toy3", &toy3, "Path fixture: 0-1-2 with costs 1 and 2, terminals {0, 2}");
    m.def("toy4", &toy4, "Cycle fixture: unit costs, terminals {0, 2}");
    m.def("generate_random_instance", &generate_random_instance, py::arg("num_vertices"),
          py::arg("num_edges"), py::arg("k"), py::arg("cost_range"), py::arg("seed"));
    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));
    m.def("validate_solution", &validate_solution, py::arg("instance"), py::arg("assignment"));

    py::class_<VariableIndex>(m, "VariableIndex")
        .def_property_readonly("size", &VariableIndex::size)
        .def_property_readonly("k", &VariableIndex::k)
        .def_property_readonly("terminals", &VariableIndex::terminals)
        .def_property_readonly("vertices", &VariableIndex::vertices)
        .def_property_readonly("is_reduced", &VariableIndex::is_reduced)
        .def("index_of", &VariableIndex::index_of, py::arg("vertex"), py::arg("terminal_pos"))
        .def("vertex_terminal", &VariableIndex::vertex_terminal, py::arg("flat"));

    py::class_<QuboTerm>(m, "QuboTerm")
        .def(py::init<int, int, double>(), py::arg("i"), py::arg("j"), py::arg("q"))
        .def_readonly("i", &QuboTerm::i)
        .def_readonly("j", &QuboTerm::j)
        .def_readonly("q", &QuboTerm::q);

    py::class_<QuboModel>(m, "QuboModel")
        .def_static("from_coefficients", &QuboModel::from_coefficients, py::arg("size"),
                    py::arg("terms"), py::arg("constant") = 0.0)
        .def_property_readonly("size", &QuboModel::size)
        .def_property_readonly("constant", &QuboModel::constant)
        .def_property_readonly("penalty_weight", &QuboModel::penalty_weight)
        .def_property_readonly("terms", &QuboModel::terms)
        .def_property_readonly("index",
                               [](const QuboModel& mdl) -> std::optional<VariableIndex> {
                                   if (!mdl.has_index()) return std::nullopt;
                                   return mdl.index();
                               })
        .def("energy",
             [](const QuboModel& mdl, const std::vector<std::uint8_t>& bits) {
                 return mdl.energy(bits);
             },
             py::arg("bits"))
        .def("coefficient", &QuboModel::coefficient, py::arg("i"), py::arg("j"))
        .def("export_text", [](const QuboModel& mdl) {
            std::ostringstream out;
            mdl.write(out);
            return out.str();
        });

    m.def("build_qubo", &build_qubo, py::arg("instance"),
          py::arg("penalty_weight") = std::nullopt, py::arg("reduced") = false);
    m.def("decode_bitstring",
          [](const VariableIndex& idx, const std::vector<std::uint8_t>& bits) {
              auto result = decode_bitstring(idx, bits);
              py::list violations;
              for (const auto& v : result.violations) {
                  const char* kind = v.kind == DecodeViolation::Kind::Unassigned
                                         ? "unassigned"
                                         : v.kind == DecodeViolation::Kind::MultipleTerminals
                                               ? "multiple"
                                               : "terminal_misassigned";
                  violations.append(py::make_tuple(v.vertex, kind));
              }
              return py::make_tuple(result.assignment, violations);
          },
          py::arg("index"), py::arg("bits"),
          "Returns (assignment or None, [(vertex, violation_kind)])");

    py::class_<IsingTerm>(m, "IsingTerm")
        .def_readonly("i", &IsingTerm::i)
        .def_readonly("j", &IsingTerm::j)
        .def_readonly("coupling", &IsingTerm::coupling);

    py::class_<IsingModel>(m, "IsingModel")
        .def_property_readonly("size", &IsingModel::size)
        .def_property_readonly("couplings", &IsingModel::couplings)
        .def_property_readonly("fields", &IsingModel::fields)
        .def_property_readonly("offset", &IsingModel::offset)
        .def("energy",
             [](const IsingModel& mdl, const std::vector<std::int8_t>& spins) {
                 return mdl.energy(spins);
             },
             py::arg("spins"));

    m.def("to_ising", &to_ising, py::arg("model"));

    py::class_<SolverReport>(m, "SolverReport")
        .def_readonly("backend", &SolverReport::backend)
        .def_readonly("best_bitstring", &SolverReport::best_bitstring)
        .def_readonly("best_energy", &SolverReport::best_energy)
        .def_readonly("best_cut", &SolverReport::best_cut)
        .def_readonly("samples_evaluated", &SolverReport::samples_evaluated)
        .def_readonly("wall_seconds", &SolverReport::wall_seconds)
        .def_readonly("seed", &SolverReport::seed)
        .def_readonly("converged", &SolverReport::converged)
        .def_readonly("optimal_sampling_probability",
                      &SolverReport::optimal_sampling_probability)
        .def_readonly("expectation", &SolverReport::expectation)
        .def_readonly("best_params", &SolverReport::best_params)
        .def("to_json", &SolverReport::to_json)
        .def("__repr__", [](const SolverReport& r) {
            std::ostringstream out;
            out << "SolverReport(" << r.backend << ", best_energy=" << r.best_energy << ")";
            return out.str();
        });

    py::class_<AnnealSchedule>(m, "AnnealSchedule")
        .def(py::init([](double t0, double tf, int sweeps, const std::string& cooling) {
                 AnnealSchedule s;
                 s.initial_temperature = t0;
                 s.final_temperature = tf;
                 s.sweeps = sweeps;
                 if (cooling == "linear")
                     s.cooling = AnnealSchedule::Cooling::Linear;
                 else if (cooling == "geometric")
                     s.cooling = AnnealSchedule::Cooling::Geometric;
                 else
                     throw ValidationError("cooling must be 'geometric' or 'linear'");
                 s.validate();
                 return s;
             }),
             py::arg("initial_temperature") = 10.0, py::arg("final_temperature") = 1e-2,
             py::arg("sweeps") = 1000, py::arg("cooling") = "geometric")
        .def_static("defaults_for", &AnnealSchedule::defaults_for, py::arg("instance"))
        .def_readonly("initial_temperature", &AnnealSchedule::initial_temperature)
        .def_readonly("final_temperature", &AnnealSchedule::final_temperature)
        .def_readonly("sweeps", &AnnealSchedule::sweeps);

    m.def("brute_force_qubo", &brute_force_qubo, py::arg("model"));
    m.def("brute_force_partition", &brute_force_partition, py::arg("instance"));
    m.def("min_cut_k2", &min_cut_k2, py::arg("instance"));
    m.def("greedy_isolation", &greedy_isolation, py::arg("instance"));
    m.def("simulated_annealing", &simulated_annealing, py::arg("model"), py::arg("schedule"),
          py::arg("num_reads") = 100, py::arg("seed") = 0);

    // qaoa
    m.def("prepare_plus_state", &prepare_plus_state, py::arg("n"));
    m.def("build_energy_table", &build_energy_table, py::arg("model"));
    m.def("qaoa_expectation",
          [](const QuboModel& mdl, const std::vector<double>& gammas,
             const std::vector<double>& betas) {
              return qaoa_expectation(mdl, make_params(gammas, betas));
          },
          py::arg("model"), py::arg("gammas"), py::arg("betas"));
    m.def("qaoa_sample",
          [](const QuboModel& mdl, const std::vector<double>& gammas,
             const std::vector<double>& betas, int shots, std::uint64_t seed) {
              return qaoa_sample(mdl, make_params(gammas, betas), shots, seed);
          },
          py::arg("model"), py::arg("gammas"), py::arg("betas"), py::arg("shots") = 4000,
          py::arg("seed") = 0);
    m.def("qaoa_optimize",
          [](const QuboModel& mdl, int depth, int max_evaluations, int final_shots,
             std::uint64_t seed) {
              QaoaConfig config;
              config.depth = depth;
              config.max_evaluations = max_evaluations;
              config.final_shots = final_shots;
              return qaoa_optimize(mdl, config, seed);
          },
          py::arg("model"), py::arg("depth") = 1, py::arg("max_evaluations") = 1000,
          py::arg("final_shots") = 4000, py::arg("seed") = 0);
    m.def("qaoa_grid_scan_p1",
          [](const QuboModel& mdl, int points) {
              auto scan = qaoa_grid_scan_p1(mdl, points);
              return py::make_tuple(scan.gamma, scan.beta, scan.expectation);
          },
          py::arg("model"), py::arg("points") = 64,
          "Returns (gamma, beta, expectation) of the exhaustive p=1 scan");

    // photonic
    py::class_<FockBasis, std::shared_ptr<FockBasis>>(m, "FockBasis")
        .def(py::init<int, int>(), py::arg("modes"), py::arg("photons"))
        .def_property_readonly("modes", &FockBasis::modes)
        .def_property_readonly("photons", &FockBasis::photons)
        .def("__len__", &FockBasis::size)
        .def("occupation",
             [](const FockBasis& b, std::size_t i) {
                 auto occ = b.occupation(i);
                 return std::vector<int>(occ.begin(), occ.end());
             },
             py::arg("index"))
        .def("index_of",
             [](const FockBasis& b, const std::vector<int>& occ) { return b.index_of(occ); },
             py::arg("occupation"));

    py::class_<FockState>(m, "FockState")
        .def_property_readonly("amplitudes",
                               [](const FockState& s) { return s.amplitudes; })
        .def_property_readonly("basis", [](const FockState& s) { return s.basis; })
        .def("norm_squared", &FockState::norm_squared);

    py::class_<InterferometerCircuit>(m, "InterferometerCircuit")
        .def(py::init<int>(), py::arg("modes"))
        .def_property_readonly("modes", &InterferometerCircuit::modes)
        .def_property_readonly("parameter_count", &InterferometerCircuit::parameter_count)
        .def("add_beam_splitter", &InterferometerCircuit::add_beam_splitter, py::arg("p"),
             py::arg("q"))
        .def("add_phase_shifter", &InterferometerCircuit::add_phase_shifter, py::arg("mode"))
        .def("dump",
             [](const InterferometerCircuit& c, const std::vector<double>& params) {
                 std::ostringstream out;
                 c.write(out, params);
                 return out.str();
             },
             py::arg("params"));

    m.def("build_generic_interferometer", &build_generic_interferometer, py::arg("modes"));
    m.def("run_circuit",
          [](const InterferometerCircuit& circuit, const std::vector<int>& input,
             const std::vector<double>& params) { return run_circuit(circuit, input, params); },
          py::arg("circuit"), py::arg("input_occupation"), py::arg("params"));
    m.def("parity_decode",
          [](const std::vector<int>& occ) { return parity_decode(occ); },
          py::arg("occupation"));
    m.def("photonic_expectation",
          [](const QuboModel& mdl, const InterferometerCircuit& circuit,
             const std::vector<int>& input, const std::vector<double>& params) {
              return photonic_expectation(mdl, circuit, input, params);
          },
          py::arg("model"), py::arg("circuit"), py::arg("input_occupation"), py::arg("params"));
    m.def("photonic_expectation_shots",
          [](const QuboModel& mdl, const InterferometerCircuit& circuit,
             const std::vector<int>& input, const std::vector<double>& params, int shots,
             std::uint64_t seed) {
              return photonic_expectation_shots(mdl, circuit, input, params, shots, seed);
          },
          py::arg("model"), py::arg("circuit"), py::arg("input_occupation"), py::arg("params"),
          py::arg("shots") = 10000, py::arg("seed") = 0);
    m.def("default_input_occupation", &default_input_occupation, py::arg("model"));
    m.def("photonic_optimize",
          [](const QuboModel& mdl, int max_evaluations, int final_shots, std::uint64_t seed) {
              PhotonicConfig config;
              config.max_evaluations = max_evaluations;
              config.final_shots = final_shots;
              return photonic_optimize(mdl, config, seed);
          },
          py::arg("model"), py::arg("max_evaluations") = 1500, py::arg("final_shots") = 10000,
          py::arg("seed") = 0);

    // optimizers
    m.def("nelder_mead",
          [](const std::function<double(std::vector<double>)>& objective,
             std::vector<double> initial, int max_evaluations, double tolerance,
             std::optional<std::vector<std::pair<double, double>>> bounds) {
              OptimizerConfig config;
              config.max_evaluations = max_evaluations;
              config.tolerance = tolerance;
              config.bounds = std::move(bounds);
              auto result = nelder_mead(
                  [&](std::span<const double> x) {
                      return objective(std::vector<double>(x.begin(), x.end()));
                  },
                  std::move(initial), config);
              return py::make_tuple(result.best_point, result.best_value, result.converged,
                                    result.evaluations);
          },
          py::arg("objective"), py::arg("initial"), py::arg("max_evaluations") = 1000,
          py::arg("tolerance") = 1e-8, py::arg("bounds") = std::nullopt,
          "Returns (best_point, best_value, converged, evaluations)");
    m.def("grid_scan",
          [](const std::function<double(std::vector<double>)>& objective,
             const std::vector<std::vector<double>>& grids) {
              auto result = grid_scan(
                  [&](std::span<const double> x) {
                      return objective(std::vector<double>(x.begin(), x.end()));
                  },
                  grids);
              return py::make_tuple(result.best_point, result.best_value);
          },
          py::arg("objective"), py::arg("grids"));

    // bench
    m.def("run_backend",
          [](const MulticutInstance& instance, const std::string& backend,
             const std::map<std::string, std::string>& settings, std::uint64_t seed) {
              return run_backend(instance, backend, settings, seed);
          },
          py::arg("instance"), py::arg("backend"),
          py::arg("settings") = std::map<std::string, std::string>{}, py::arg("seed") = 0);
    m.def("run_suite_from_text",
          [](const std::string& config_text) {
              std::istringstream in(config_text);
              auto config = BenchmarkConfig::parse(in);
              auto records = run_suite(config);
              std::ostringstream csv;
              write_records_csv(records, csv);
              return csv.str();
          },
          py::arg("config_text"), "Runs a suite from config text, returns the records CSV");
}
