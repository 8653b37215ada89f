"""Minimum edge multiway cut: QUBO/Ising encodings and solver backends."""

from ._memcut import (  # noqa: F401
    AnnealSchedule,
    CapacityError,
    CutSolution,
    Edge,
    FockBasis,
    FockState,
    InterferometerCircuit,
    IsingModel,
    IsingTerm,
    MulticutInstance,
    QuboModel,
    QuboTerm,
    SolverReport,
    ValidationError,
    VariableIndex,
    brute_force_partition,
    brute_force_qubo,
    build_energy_table,
    build_generic_interferometer,
    build_qubo,
    decode_bitstring,
    default_input_occupation,
    generate_random_instance,
    greedy_isolation,
    grid_scan,
    load_instance,
    min_cut_k2,
    nelder_mead,
    parity_decode,
    photonic_expectation,
    photonic_expectation_shots,
    photonic_optimize,
    prepare_plus_state,
    qaoa_expectation,
    qaoa_grid_scan_p1,
    qaoa_optimize,
    qaoa_sample,
    run_backend,
    run_circuit,
    run_suite_from_text,
    save_instance,
    simulated_annealing,
    to_ising,
    toy3,
    toy4,
    validate_solution,
)

__version__ = "0.1.0"
