"""The frustration-free clock Hamiltonian of a small circuit.

Each gate of a circuit becomes a propagation projector tying work
register and unary clock together; pinning and clock penalties make
every term a projector and the unique zero-energy ground state is the
weighted history of the computation. The clock weighting s trades
ground-state shape against the spectral gap.
"""

import numpy as np

from stoqmap import (
    QuantumCircuit,
    block_matrix,
    build_ff,
    clock_state_index,
    cnot,
    eig_dense,
    gap_formulas,
    history_state,
    rot,
)

circuit = QuantumCircuit(2, (rot(0, 0.5), cnot(0, 1), rot(1, -0.2)))
print(f"circuit: n = {circuit.n} work qubits, L = {circuit.L} gates")

s = 0.5
ff = build_ff(circuit, s)
worst = max(
    np.linalg.norm((T := term.realize(ff.total_qubits).toarray()) @ T - T) for term in ff.terms
)
print(f"H^FF(s={s}) has {len(ff.terms)} terms, worst ||T^2 - T|| = {worst:.2e}")

vals, vecs = np.linalg.eigh(ff.realize().toarray())
h = history_state(circuit, s)
v = vecs[:, 0] * np.sign(vecs[:, 0] @ h)
print(f"ground energy {vals[0]:.2e}, gap {vals[1]:.6f}")
print(f"ground state vs history state: ||difference|| = {np.linalg.norm(v - h):.2e}")

cdim = 1 << (circuit.L + 1)
amps = h[clock_state_index(circuit.L, circuit.L) :: cdim]
print(f"probability the clock reads L: {np.sum(np.abs(amps) ** 2):.6f} (1/(L+1) = {1 / (circuit.L + 1):.6f})")

print("\ngap scan (weight-0 block gap is exact at every s; the weight-1")
print("closed form is the value at s = 1/2 and a lower bound elsewhere):")
for s in (0.1, 0.25, 0.5):
    block_want, full_want = gap_formulas(s, circuit.L)
    m0 = block_matrix(0, s, circuit.L).spectrum()
    m1 = block_matrix(1, s, circuit.L).spectrum()
    print(
        f"  s={s:<5} block gap {m0[1]:.6f} (formula {block_want:.6f})"
        f"   weight-1 ground {m1[0]:.6f} (bound {full_want:.6f})"
    )
