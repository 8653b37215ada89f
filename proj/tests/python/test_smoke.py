"""Smoke tests for the python bindings; the heavy verification lives in the C++ suites."""

import math

import pytest

import memcut as mc


def test_toy3_oracles_agree():
    inst = mc.toy3()
    assert inst.num_vertices == 3
    assert inst.terminals == [0, 2]
    assert mc.brute_force_partition(inst).cut_cost == pytest.approx(1.0)
    assert mc.min_cut_k2(inst).cut_cost == pytest.approx(1.0)
    assert mc.greedy_isolation(inst).cut_cost == pytest.approx(1.0)

    model = mc.build_qubo(inst)
    assert model.penalty_weight == pytest.approx(4.0)
    report = mc.brute_force_qubo(model)
    assert report.best_energy == pytest.approx(1.0)
    assignment, violations = mc.decode_bitstring(model.index, report.best_bitstring)
    assert violations == []
    assert assignment == [0, 2, 2]


def test_instance_roundtrip(tmp_path):
    inst = mc.generate_random_instance(8, 12, 3, (1.0, 5.0), seed=11)
    path = str(tmp_path / "inst.memc")
    mc.save_instance(inst, path)
    assert mc.load_instance(path) == inst


def test_validation_errors_map_to_python():
    with pytest.raises(ValueError):
        mc.generate_random_instance(4, 2, 2, (1.0, 1.0), seed=0)
    with pytest.raises(RuntimeError):
        mc.brute_force_qubo(mc.QuboModel.from_coefficients(30, []))


def test_ising_mapping_identity():
    model = mc.build_qubo(mc.toy3())
    ising = mc.to_ising(model)
    for b in range(2 ** model.size):
        bits = [(b >> i) & 1 for i in range(model.size)]
        spins = [1 - 2 * x for x in bits]
        assert ising.energy(spins) + ising.offset == pytest.approx(model.energy(bits), abs=1e-9)


def test_simulated_annealing_hits_optimum():
    inst = mc.toy4()
    model = mc.build_qubo(inst)
    report = mc.simulated_annealing(model, mc.AnnealSchedule.defaults_for(inst), num_reads=20, seed=1)
    assert report.best_energy == pytest.approx(2.0)

    # run_backend decodes the bitstring back into a cut
    full = mc.run_backend(inst, "sa", {"reads": "20"}, seed=1)
    assert full.best_cut is not None
    assert full.best_cut.cut_cost == pytest.approx(2.0)


def test_qaoa_expectation_and_sampling():
    model = mc.build_qubo(mc.toy3())
    assert mc.qaoa_expectation(model, [0.0], [0.0]) == pytest.approx(11.5)
    gamma, beta, expectation = mc.qaoa_grid_scan_p1(model)
    assert expectation < 11.5
    hist = mc.qaoa_sample(model, [gamma], [beta], shots=2000, seed=5)
    assert sum(hist.values()) == 2000
    table = mc.build_energy_table(model)
    assert min(table[b] for b in hist) == pytest.approx(1.0)


def test_photonic_hom_and_optimize():
    circuit = mc.InterferometerCircuit(2)
    circuit.add_beam_splitter(0, 1)
    out = mc.run_circuit(circuit, [1, 1], [math.pi / 4, 0.0])
    amps = out.amplitudes
    assert abs(amps[out.basis.index_of([1, 1])]) < 1e-12
    assert out.norm_squared() == pytest.approx(1.0)

    model = mc.build_qubo(mc.toy4(), reduced=True)
    report = mc.photonic_optimize(model, seed=0)
    assert report.best_energy == pytest.approx(2.0)
    assert report.optimal_sampling_probability > 0.5


def test_nelder_mead_binding():
    point, value, converged, evals = mc.nelder_mead(
        lambda x: (x[0] - 1.0) ** 2 + (x[1] + 2.0) ** 2, [0.0, 0.0], max_evaluations=500,
        tolerance=1e-12)
    assert value < 1e-8
    assert point[0] == pytest.approx(1.0, abs=1e-3)
    assert evals <= 500


def test_run_backend_and_suite():
    report = mc.run_backend(mc.toy3(), "exact")
    assert report.best_energy == pytest.approx(1.0)
    csv = mc.run_suite_from_text(
        "[instances]\nfixtures = toy3\n[suite]\nbackends = exact,maxflow\n")
    lines = csv.strip().splitlines()
    assert lines[0].startswith("instance,backend,")
    assert len(lines) == 3
    assert ",1," in lines[1]
