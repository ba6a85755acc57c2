"""Witness the c-th eigenvalue with antisymmetric states.

A c-fold antisymmetric witness cannot concentrate more than 1/c of its
weight on any single-register state, so a verifier that measures one
register accepts with probability exactly 1 when c eigenvalues sit below
the threshold and at most 1 - 1/c otherwise. H_c shows the construction
is tight: exactly c negative eigenvalues and nothing
else below 1/2.
"""

import numpy as np

from stoqmap import (
    ExcitedEnergyProblem,
    acceptance_operator,
    antisym_projector,
    build_Hc,
    build_matrix,
    eig_dense,
    lemma1_value,
)

rng = np.random.default_rng(9)
d, c = 6, 3
P = antisym_projector(d, c)
vals = []
for _ in range(50):
    phi = P @ (rng.standard_normal(d**c) + 1j * rng.standard_normal(d**c))
    phi /= np.linalg.norm(phi)
    vals.append(lemma1_value(phi, rng.standard_normal(d)))
print(f"one-register weight of antisymmetric states (c = {c}): max over 50 draws")
print(f"  {max(vals):.6f} <= 1/c = {1 / c:.6f}")

H = np.diag(np.arange(4.0))
for c_test, thr, label in ((2, 1.5, "YES"), (2, 0.5, "NO")):
    rep = acceptance_operator(H, c_test, thr)
    print(
        f"\nthreshold {thr}: {rep.eigenvalues_below} eigenvalue(s) below, c = {c_test}"
        f" -> acceptance {rep.probability:.10f} ({label}, bound 1 - 1/c = {rep.bound})"
    )

print("\nH_c family: exactly c negative eigenvalues, rest at >= 1/2")
for c_test in (1, 2, 4, 8):
    d_bits = 0 if c_test == 1 else int(np.ceil(np.log2(c_test)))
    spec = eig_dense(build_matrix(build_Hc(c_test, d_bits + 1)), compute_vectors=False).eigenvalues
    negatives = int(np.sum(spec < -1e-12))
    print(f"  c = {c_test}: {negatives} negatives, lowest nonnegative {min(spec[spec > -1e-12]):.3f}")

problem = ExcitedEnergyProblem(H=build_Hc(3, 3), c=3, a=-0.4, b=0.1)
print(f"\ndecision for the 3rd eigenvalue of H_3: lambda_c = {problem.lambda_c():.4f}"
      f" -> {problem.decide()}")
