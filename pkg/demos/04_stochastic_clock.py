"""A circuit Hamiltonian made of doubly stochastic psd terms.

Applying the sign-elimination map to every clock term (they are real
projectors) and mixing each with the shared ancilla penalty produces a
list of operators that are simultaneously psd and doubly stochastic,
still frustration free, with the gap rescaled by p/N.
"""

import numpy as np

from stoqmap import (
    QuantumCircuit,
    build_ff,
    build_stochastic_ff,
    classify,
    cnot,
    eig_dense,
    ff_term_hamiltonians,
    rot,
)

circuit = QuantumCircuit(2, (rot(0, 0.5), cnot(0, 1), rot(1, 0.3)))
s, p = 0.5, 0.1
terms = build_stochastic_ff(circuit, s, p)

flags = [classify(T) for T in terms]
print(f"{len(terms)} output terms on {int(np.log2(terms[0].shape[0]))} qubits")
print(f"all psd:               {all(f.psd for f in flags)}")
print(f"all doubly stochastic: {all(f.doubly_stochastic for f in flags)}")

total = terms[0]
for T in terms[1:]:
    total = total + T
out = eig_dense(total, compute_vectors=False).eigenvalues

ff = build_ff(circuit, s)
in_vals = eig_dense(ff.realize(), compute_vectors=False).eigenvalues
N = sum(H.N for H in ff_term_hamiltonians(ff))

print(f"\nsummed ground energy: {out[0]:.2e}")
print(f"input gap {in_vals[1]:.6f}, output gap {out[1]:.6f}")
print(f"ratio {out[1] / in_vals[1]:.6f} vs p/N = {p / N:.6f}")
