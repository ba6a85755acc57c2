"""Schedule-driven Schrodinger evolution with sector tracking and decoding.

The integrator applies exact matrix exponentials of the midpoint
Hamiltonian on each step, so the evolution is unitary to roundoff and
the only error is the O(dt^2) schedule discretization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp

from . import mapping
from .clock import QuantumCircuit, build_ff
from .errors import ContractError, ResourceError

DENSE_CAP = 4096
# Ground-space projection uses this degeneracy window.
DEGENERACY_TOL = 1e-8


@dataclass(eq=False)
class HamiltonianPath:
    """Schedule parameter u in [0,1] mapped to a (sparse) Hamiltonian.

    sector_projector, when present, marks an ancilla sector the
    evolution is expected to stay inside; evolve() then records the
    population so leakage can be reported.
    """

    generator: Callable[[float], sp.spmatrix]
    sector_projector: sp.spmatrix | None = None
    sector_label: str | None = None


def linear_interpolation_path(Ha, Hb) -> HamiltonianPath:
    A = sp.csr_matrix(Ha)
    B = sp.csr_matrix(Hb)
    if A.shape != B.shape:
        raise ContractError("endpoint dimensions differ")
    return HamiltonianPath(lambda u: sp.csr_matrix((1.0 - u) * A + u * B))


def ff_schedule_path(circuit: QuantumCircuit) -> HamiltonianPath:
    """The clock path H^FF(s(u)) with s(u) = u/2.

    Every H^FF(s) preserves the span of the legal clock configurations,
    so that span is tracked as the protected sector.
    """
    from .clock import legal_basis

    B = legal_basis(build_ff(circuit, 0.25))
    projector = sp.csr_matrix(B @ B.conj().T)
    return HamiltonianPath(
        generator=lambda u: build_ff(circuit, u / 2.0).realize(),
        sector_projector=projector,
        sector_label="legal",
    )


def stoquastic_interpolation_path(Ha, Hb) -> HamiltonianPath:
    """Stoquastized linear interpolation with the |-> sector protected.

    Ha, Hb are LocalHamiltonians on the same register; the generator is
    stoquastize((1-u) Ha + u Hb), whose |-> sector reproduces the
    interpolation exactly and never couples to |+>.
    """
    if Ha.n != Hb.n:
        raise ContractError("endpoint registers differ")
    n = Ha.n

    def gen(u: float) -> sp.csr_matrix:
        return mapping.stoquastize(Ha.scaled(1.0 - u) + Hb.scaled(u)).realize()

    return HamiltonianPath(
        generator=gen,
        sector_projector=mapping.sector_projector(n, mapping.MINUS),
        sector_label="-",
    )


@dataclass(eq=False)
class AdiabaticTrace:
    times: np.ndarray
    u_values: np.ndarray
    overlaps: np.ndarray | None
    sector_populations: np.ndarray | None
    norms: np.ndarray
    final_state: np.ndarray
    T: float
    steps: int


def _check_sample(H: sp.spmatrix, dense_cap: int) -> np.ndarray:
    if H.shape[0] > dense_cap:
        raise ResourceError(f"dimension {H.shape[0]} exceeds the dense cap {dense_cap}")
    dense = H.toarray()
    if np.max(np.abs(dense - dense.conj().T)) > 1e-9 * max(1.0, float(np.max(np.abs(dense)))):
        raise ContractError("sampled Hamiltonian is not Hermitian")
    return dense


def evolve(
    path: HamiltonianPath,
    T: float,
    steps: int,
    initial: np.ndarray,
    target: str | np.ndarray | Callable[[float], np.ndarray] | None = "ground",
    dense_cap: int = DENSE_CAP,
) -> AdiabaticTrace:
    """Piecewise-constant propagation of `initial` along the path.

    target "ground" tracks the population of the instantaneous ground
    eigenspace (eigenvalues within a degeneracy window of the minimum);
    a vector or a callable u -> vector tracks |<target|psi>|^2 instead.
    """
    if steps < 1:
        raise ContractError("need at least one step")
    psi = np.asarray(initial, dtype=complex).ravel().copy()
    if abs(np.linalg.norm(psi) - 1.0) > 1e-8:
        raise ContractError("initial state is not normalized")
    dt = T / steps
    want_overlap = target is not None

    def overlap_at(u: float, state: np.ndarray, dense: np.ndarray | None) -> float:
        if isinstance(target, str) and target == "ground":
            if dense is None:
                dense = _check_sample(sp.csr_matrix(path.generator(u)), dense_cap)
            vals, vecs = np.linalg.eigh(dense)
            ground = vecs[:, vals <= vals[0] + DEGENERACY_TOL]
            return float(np.linalg.norm(ground.conj().T @ state) ** 2)
        vec = target(u) if callable(target) else np.asarray(target)
        return float(abs(np.vdot(vec, state)) ** 2)

    samples = steps + 1
    times = np.linspace(0.0, T, samples)
    u_values = np.linspace(0.0, 1.0, samples)
    norms = np.zeros(samples)
    overlaps = np.zeros(samples) if want_overlap else None
    pops = np.zeros(samples) if path.sector_projector is not None else None

    def record(k: int, u: float, dense: np.ndarray | None):
        norms[k] = np.linalg.norm(psi)
        if overlaps is not None:
            overlaps[k] = overlap_at(u, psi, dense)
        if pops is not None:
            pops[k] = float(np.real(np.vdot(psi, path.sector_projector @ psi)))

    record(0, 0.0, None)
    for k in range(steps):
        u_mid = (k + 0.5) / steps
        dense = _check_sample(sp.csr_matrix(path.generator(u_mid)), dense_cap)
        vals, vecs = np.linalg.eigh(dense)
        phases = np.exp(-1j * vals * dt)
        psi = vecs @ (phases * (vecs.conj().T @ psi))
        record(k + 1, (k + 1.0) / steps, None)
    return AdiabaticTrace(
        times=times,
        u_values=u_values,
        overlaps=overlaps,
        sector_populations=pops,
        norms=norms,
        final_state=psi,
        T=T,
        steps=steps,
    )


@dataclass(frozen=True)
class MeasurementReport:
    n: int
    clock_qubits: int
    shots: int
    seed: int
    padded: bool
    clock_success_probability: float
    clock_success_count: int
    clock_success_frequency: float
    decoded_counts: dict[str, int]
    decoded_distribution_exact: dict[str, float]


def measure_and_decode(
    final: np.ndarray,
    circuit: QuantumCircuit,
    shots: int,
    seed: int = 0,
    padded: bool = False,
) -> MeasurementReport:
    """Sample the clock register, keeping shots whose clock has passed the circuit.

    Success means the first L+1 clock qubits all read 1, that is, clock
    time >= L of the original circuit. Unpadded this is the single
    all-ones pattern with history-state probability 1/(L+1) at s = 1/2;
    with padded=True the state lives on the circuit padded by L identity
    gates (clock depth 2L), the work register is already final on every
    successful pattern, and the probability rises to (L+1)/(2L+1).
    """
    base_L = circuit.L
    L_total = 2 * base_L if padded else base_L
    n = circuit.n
    dim = 1 << (n + L_total + 1)
    final = np.asarray(final, dtype=complex).ravel()
    if final.size != dim:
        raise ContractError(
            f"state has dimension {final.size}, layout needs {dim} (n={n}, clock={L_total + 1})"
        )
    cdim = 1 << (L_total + 1)
    shift = L_total - base_L
    lead_ones = (1 << (base_L + 1)) - 1
    success_cols = np.array([c for c in range(cdim) if c >> shift == lead_ones])
    probs = np.abs(final) ** 2
    probs = probs / probs.sum()
    table = probs.reshape(1 << n, cdim)
    success_p = float(table[:, success_cols].sum())
    if success_p > 0:
        conditional = table[:, success_cols].sum(axis=1) / success_p
    else:
        conditional = np.zeros(1 << n)
    rng = np.random.default_rng(seed)
    draws = rng.choice(dim, size=shots, p=probs)
    clock_part = draws % cdim
    work_part = draws // cdim
    hits = work_part[clock_part >> shift == lead_ones]
    counts: dict[str, int] = {}
    for w in hits:
        key = format(int(w), f"0{n}b")
        counts[key] = counts.get(key, 0) + 1
    exact = {format(i, f"0{n}b"): float(p) for i, p in enumerate(conditional)}
    return MeasurementReport(
        n=n,
        clock_qubits=L_total + 1,
        shots=int(shots),
        seed=int(seed),
        padded=bool(padded),
        clock_success_probability=success_p,
        clock_success_count=int(hits.size),
        clock_success_frequency=float(hits.size) / shots if shots else 0.0,
        decoded_counts=counts,
        decoded_distribution_exact=exact,
    )


def sector_leakage(trace: AdiabaticTrace) -> float:
    """1 minus the worst protected-sector population seen along the trace."""
    if trace.sector_populations is None:
        raise ContractError("trace has no protected sector")
    return float(1.0 - np.min(trace.sector_populations))
