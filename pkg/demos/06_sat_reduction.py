"""Reduce quantum satisfiability of projectors to a stochastic instance.

Each projector is pushed through the phase-elimination map and mixed
with the shared ancilla penalty, giving column-stochastic psd operators.
A zero-energy common state survives the reduction exactly; an
unsatisfiable instance keeps ground energy >= epsilon/(3 m N_max).
"""

import numpy as np

from stoqmap import LocalHamiltonian, SatInstance, decide_sat, reduce_qsat

# |1><1| on each of two qubits: satisfied by |00>
p1_q0 = LocalHamiltonian.from_signed(2, [(0.5, {}), (-0.5, {0: "Z"})])
p1_q1 = LocalHamiltonian.from_signed(2, [(0.5, {}), (-0.5, {1: "Z"})])
sat = SatInstance.from_paulis([p1_q0, p1_q1], epsilon=1.0)

# add the complementary projector on qubit 0: now nothing satisfies all three
p0_q0 = LocalHamiltonian.from_signed(2, [(0.5, {}), (0.5, {0: "Z"})])
unsat = SatInstance.from_paulis([p1_q0, p1_q1, p0_q0], epsilon=1.0)

for name, inst in (("satisfiable", sat), ("unsatisfiable", unsat)):
    before = decide_sat(inst)
    reduced = reduce_qsat(inst)
    after = decide_sat(reduced)
    print(f"{name}: m = {inst.m} projectors on n = {inst.n} qubits")
    print(f"  original verdict {before.verdict} (ground {before.ground_energy:.3e})")
    print(
        f"  reduced to {reduced.m} stochastic operators on n = {reduced.n} qubits,"
        f" promise gap {reduced.epsilon:.4f}"
    )
    print(f"  reduced verdict  {after.verdict} (ground {after.ground_energy:.3e})")
    if after.verdict == "NO":
        bound = inst.epsilon / (3 * inst.m * reduced.N_max)
        print(f"  ground {after.ground_energy:.4f} >= epsilon/(3 m N_max) = {bound:.4f}")
    print()

reduced = reduce_qsat(sat)
reduced.check()
print("reduced operators pass the stochastic-instance invariants (psd + column stochastic)")
