import numpy as np
import pytest
import scipy.sparse as sp

from stoqmap import (
    ContractError,
    HamiltonianPath,
    LocalHamiltonian,
    QuantumCircuit,
    build_matrix,
    clock_state_index,
    cnot,
    custom,
    evolve,
    ff_schedule_path,
    history_state,
    identity_gate,
    linear_interpolation_path,
    measure_and_decode,
    output_distribution,
    rot,
    sector_leakage,
    stoquastic_interpolation_path,
)

MINUS = np.array([1.0, -1.0]) / np.sqrt(2.0)
PLUS = np.array([1.0, 1.0]) / np.sqrt(2.0)


def identity_circuit(n, L):
    return QuantumCircuit(n, tuple(identity_gate() for _ in range(L)))


def ff_initial(circuit):
    dim = 1 << (circuit.n + circuit.L + 1)
    v = np.zeros(dim)
    v[clock_state_index(0, circuit.L)] = 1.0
    return v


def interp_endpoints():
    Ha = LocalHamiltonian.from_signed(2, [(1.0, {0: "X"}), (0.5, {1: "Z"})])
    Hb = LocalHamiltonian.from_signed(2, [(0.8, {0: "Z", 1: "X"}), (0.3, {1: "X"})])
    return Ha, Hb


# ------------------------------------------------------------------- evolve

def test_constant_path_keeps_eigenstate():
    H = sp.csr_matrix(np.diag([0.0, 1.0, 2.0, 3.0]))
    path = HamiltonianPath(lambda u: H)
    init = np.array([1.0, 0.0, 0.0, 0.0])
    trace = evolve(path, T=5.0, steps=50, initial=init, target="ground")
    assert np.max(np.abs(trace.overlaps - 1.0)) <= 1e-12
    trace2 = evolve(path, T=5.0, steps=50, initial=init, target=init)
    assert np.max(np.abs(trace2.overlaps - 1.0)) <= 1e-12


def test_evolve_rejects_bad_inputs():
    H = sp.identity(4, format="csr")
    path = HamiltonianPath(lambda u: H)
    with pytest.raises(ContractError, match="normalized"):
        evolve(path, 1.0, 10, np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ContractError, match="step"):
        evolve(path, 1.0, 0, np.array([1.0, 0.0, 0.0, 0.0]))


def test_norm_drift_stays_tiny():
    circuit = identity_circuit(1, 2)
    trace = evolve(
        ff_schedule_path(circuit), T=50.0, steps=500,
        initial=ff_initial(circuit), target=None,
    )
    assert np.max(np.abs(trace.norms - 1.0)) <= 1e-8


def test_ff_path_reaches_history_state():
    circuit = identity_circuit(1, 2)
    trace = evolve(
        ff_schedule_path(circuit), T=200.0, steps=400,
        initial=ff_initial(circuit), target=history_state(circuit, 0.5),
    )
    assert trace.overlaps[-1] >= 0.99


def test_final_overlap_monotone_in_total_time():
    for L in range(1, 5):
        circuit = identity_circuit(1, L)
        path = ff_schedule_path(circuit)
        init = ff_initial(circuit)
        target = history_state(circuit, 0.5)
        finals = []
        for T in (60.0, 120.0, 240.0):
            trace = evolve(path, T, max(64, int(1.5 * T)), init, target=target)
            finals.append(trace.overlaps[-1])
        assert finals[0] <= finals[1] + 1e-3
        assert finals[1] <= finals[2] + 1e-3
        assert finals[-1] >= 0.99


# -------------------------------------------------------- protected sectors

def test_sign_free_path_never_leaks():
    Ha, Hb = interp_endpoints()
    path = stoquastic_interpolation_path(Ha, Hb)
    psi0 = np.zeros(4)
    psi0[0] = 1.0
    init = np.kron(psi0, MINUS)
    trace = evolve(path, T=10.0, steps=100, initial=init, target=None)
    assert np.min(trace.sector_populations) >= 1.0 - 1e-10
    assert sector_leakage(trace) <= 1e-10


def test_sign_free_path_matches_direct_evolution():
    Ha, Hb = interp_endpoints()
    direct = linear_interpolation_path(build_matrix(Ha), build_matrix(Hb))
    psi0 = np.zeros(4)
    psi0[0] = 1.0
    T, steps = 7.0, 140
    ref = evolve(direct, T, steps, psi0, target=None).final_state
    mapped = stoquastic_interpolation_path(Ha, Hb)
    got = evolve(mapped, T, steps, np.kron(psi0, MINUS), target=None).final_state
    work = got.reshape(-1, 2) @ MINUS
    assert np.linalg.norm(work - ref) <= 1e-8


def test_injected_sector_coupling_leaks():
    Ha, Hb = interp_endpoints()
    clean = stoquastic_interpolation_path(Ha, Hb)
    coupler = sp.kron(sp.identity(4, format="csr"),
                      sp.csr_matrix(np.diag([1.0, -1.0])), format="csr")
    noisy = HamiltonianPath(
        generator=lambda u: clean.generator(u) + 1e-3 * coupler,
        sector_projector=clean.sector_projector,
        sector_label=clean.sector_label,
    )
    init = np.kron(np.array([1.0, 0.0, 0.0, 0.0]), MINUS)
    trace = evolve(noisy, T=5.0, steps=50, initial=init, target=None)
    assert sector_leakage(trace) > 1e-12


def test_initial_state_outside_sector_leaks_fully():
    Ha, Hb = interp_endpoints()
    path = stoquastic_interpolation_path(Ha, Hb)
    init = np.kron(np.array([1.0, 0.0, 0.0, 0.0]), PLUS)
    trace = evolve(path, T=1.0, steps=10, initial=init, target=None)
    assert abs(sector_leakage(trace) - 1.0) <= 1e-12


def test_leakage_needs_protected_sector():
    path = linear_interpolation_path(sp.identity(4), sp.identity(4))
    trace = evolve(path, 1.0, 5, np.array([1.0, 0.0, 0.0, 0.0]), target=None)
    with pytest.raises(ContractError, match="sector"):
        sector_leakage(trace)


# -------------------------------------------------------- measure and decode

def test_clock_success_probability_quarter():
    circuit = QuantumCircuit(1, tuple(rot(0, 0.1 * (j + 1)) for j in range(3)))
    h = history_state(circuit, 0.5)
    report = measure_and_decode(h, circuit, shots=10, seed=3)
    assert abs(report.clock_success_probability - 0.25) <= 1e-15


def test_padded_success_probability():
    # padding with L identities raises success from 1/(L+1) to (L+1)/(2L+1)
    for L in (1, 2, 3):
        circuit = QuantumCircuit(1, tuple(rot(0, 0.2) for _ in range(L)))
        h = history_state(circuit.padded(), 0.5)
        report = measure_and_decode(h, circuit, shots=10, seed=0, padded=True)
        assert abs(report.clock_success_probability - (L + 1) / (2 * L + 1)) <= 1e-12


def test_padded_decode_is_exact_circuit_output():
    circuit = QuantumCircuit(2, (rot(0, 0.4), cnot(0, 1)))
    h = history_state(circuit.padded(), 0.5)
    report = measure_and_decode(h, circuit, shots=10, seed=0, padded=True)
    want = output_distribution(circuit)
    for key, prob in want.items():
        assert abs(report.decoded_distribution_exact[key] - prob) <= 1e-12


def test_single_x_always_decodes_one():
    x_gate = custom([0], [[0.0, 1.0], [1.0, 0.0]])
    circuit = QuantumCircuit(1, (x_gate,))
    h = history_state(circuit, 0.5)
    report = measure_and_decode(h, circuit, shots=500, seed=11)
    assert report.clock_success_count > 0
    assert set(report.decoded_counts) == {"1"}
    assert abs(report.decoded_distribution_exact["1"] - 1.0) <= 1e-12


def test_decoded_counts_match_circuit_distribution():
    circuits = [
        QuantumCircuit(1, tuple(rot(0, 0.3 * (j + 1)) for j in range(3))),
        QuantumCircuit(2, (rot(0, 0.5), cnot(0, 1), rot(1, 0.9), cnot(1, 0))),
    ]
    for circuit in circuits:
        h = history_state(circuit, 0.5)
        report = measure_and_decode(h, circuit, shots=10_000, seed=5)
        want = output_distribution(circuit)
        total = sum(report.decoded_counts.values())
        assert total > 0
        tv = 0.5 * sum(
            abs(report.decoded_counts.get(k, 0) / total - want[k]) for k in want
        )
        assert tv <= 0.05


def test_measure_rejects_layout_mismatch():
    circuit = identity_circuit(1, 2)
    with pytest.raises(ContractError, match="dimension"):
        measure_and_decode(np.zeros(8), circuit, shots=1)


def test_measure_deterministic_for_seed():
    circuit = QuantumCircuit(1, (rot(0, 0.7), rot(0, -0.2)))
    h = history_state(circuit, 0.5)
    a = measure_and_decode(h, circuit, shots=2000, seed=42)
    b = measure_and_decode(h, circuit, shots=2000, seed=42)
    assert a.decoded_counts == b.decoded_counts
    assert a.clock_success_count == b.clock_success_count
