"""Eliminate the sign problem of a small random Hamiltonian.

A real 2-local H picks up negative off-diagonal entries from its Pauli
terms. Replacing every -1 entry by the ancilla flip X turns it into a
stoquastic matrix one qubit larger, and normalizing the weights turns it
into a doubly stochastic one. Both keep the original spectrum intact in
the |-> ancilla sector.
"""

import numpy as np

from stoqmap import (
    add_ancilla_penalty,
    build_matrix,
    classify,
    eig_dense,
    random_instance,
    sector_spectrum,
    stochastize,
    stoquastize,
)

H = random_instance(3, locality=2, seed=7)
spec = eig_dense(build_matrix(H), compute_vectors=False).eigenvalues
print(f"H on {H.n} qubits, {H.num_terms} Pauli terms, weight N = {H.N:.3f}")
print(f"spectrum: {np.round(spec, 4)}")

stoq = stoquastize(H)
flags = classify(stoq.realize())
print(f"\nstoquastize -> {stoq.n + stoq.ancilla_count} qubits, stoquastic: {flags.stoquastic}")
err = np.max(np.abs(sector_spectrum(stoq, '-') - spec))
print(f"|-> sector spectrum error vs H: {err:.2e}")

stoch = stochastize(H)
flags = classify(stoch.realize())
print(f"\nstochastize -> doubly stochastic: {flags.doubly_stochastic}")
err = np.max(np.abs(stoch.normalization * sector_spectrum(stoch, '-') - spec))
print(f"N * (|-> sector spectrum) error vs H: {err:.2e}")

# the penalty pushes the junk sector up, leaving (p/N) spec(H) at the bottom
p = 0.25
penalized = add_ancilla_penalty(stoch, p)
vals = eig_dense(penalized.realize(), compute_vectors=False).eigenvalues
low = vals[: 1 << H.n]
err = np.max(np.abs(low - (p / penalized.normalization) * spec))
print(f"\npenalty at p = {p}: lowest 2^n eigenvalues = (p/N) spec(H), error {err:.2e}")
print(f"split: lower half tops out at {low[-1]:.4f}, upper half starts at {vals[1 << H.n]:.4f}")
