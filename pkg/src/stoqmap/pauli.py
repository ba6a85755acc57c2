"""Pauli-string Hamiltonians and their sparse matrix realizations.

Conventions used throughout the package: qubit 0 is the most
significant bit of a computational basis index, and ancilla qubits are
appended after the work qubits (so they occupy the least significant
bits).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ContractError, ResourceError

# Largest register build_matrix will realize; 2^14 keeps dense fallbacks sane.
MAX_QUBITS = 14

PAULI_LABELS = ("X", "Y", "Z")

_PAULI_DENSE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def bit_of(index, qubit: int, n: int):
    """Bit of `qubit` inside an n-qubit basis index (qubit 0 most significant)."""
    return (index >> (n - 1 - qubit)) & 1


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of single-qubit Pauli operators.

    `factors` maps qubit index to one of "X", "Y", "Z"; omitted qubits
    carry the identity. Only the sign lives here; term magnitudes live
    on the enclosing LocalHamiltonian.
    """

    factors: tuple[tuple[int, str], ...]
    sign: int = 1

    def __post_init__(self):
        raw = self.factors
        if isinstance(raw, Mapping):
            pairs = list(raw.items())
        else:
            pairs = list(raw)
        seen = {}
        for q, op in pairs:
            if op not in PAULI_LABELS:
                raise ContractError(f"unknown Pauli label {op!r}")
            if not isinstance(q, (int, np.integer)) or q < 0:
                raise ContractError(f"bad qubit index {q!r}")
            if q in seen:
                raise ContractError(f"duplicate qubit {q} in Pauli string")
            seen[int(q)] = op
        if self.sign not in (1, -1):
            raise ContractError(f"sign must be +1 or -1, got {self.sign!r}")
        object.__setattr__(self, "factors", tuple(sorted(seen.items())))

    @property
    def weight(self) -> int:
        return len(self.factors)

    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def y_count(self) -> int:
        return sum(1 for _, op in self.factors if op == "Y")

    def has_real_entries(self) -> bool:
        return self.y_count() % 2 == 0

    def __str__(self) -> str:
        body = " ".join(f"{op}{q}" for q, op in self.factors) or "I"
        return ("+" if self.sign > 0 else "-") + body


def realize_string(string: PauliString, n: int) -> sp.csr_matrix:
    """Sparse matrix of sign * (tensor of factors) on n qubits.

    Entries are +-1 for an even number of Y factors and +-i otherwise;
    either way there is exactly one entry per row and column.
    """
    for q in string.qubits():
        if q >= n:
            raise ContractError(f"qubit {q} out of range for n={n}")
    dim = 1 << n
    flip = 0
    phase_mask = 0
    ny = 0
    for q, op in string.factors:
        pos = n - 1 - q
        if op in ("X", "Y"):
            flip |= 1 << pos
        if op in ("Z", "Y"):
            phase_mask |= 1 << pos
        if op == "Y":
            ny += 1
    cols = np.arange(dim, dtype=np.int64)
    rows = cols ^ flip
    parity = np.zeros(dim, dtype=bool)
    mask = phase_mask
    while mask:
        low = mask & -mask
        parity ^= (cols & low) != 0
        mask ^= low
    amp = np.where(parity, -1.0, 1.0)
    unit = 1j ** (ny % 4)
    if ny % 2 == 0:
        vals = (string.sign * unit.real) * amp
    else:
        vals = (string.sign * unit) * amp.astype(complex)
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))


@dataclass(frozen=True)
class LocalHamiltonian:
    """Sum of positively weighted signed Pauli strings on n qubits.

    Duplicate strings are merged at construction; a merge to zero drops
    the term. The realized matrix is always Hermitian because every
    coefficient is real.
    """

    n: int
    terms: tuple[tuple[float, PauliString], ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ContractError(f"need at least one qubit, got n={self.n!r}")
        merged: dict[tuple, float] = {}
        for alpha, string in self.terms:
            alpha = float(alpha)
            if not np.isfinite(alpha):
                raise ContractError("non-finite coefficient")
            if alpha <= 0:
                raise ContractError(
                    f"coefficients must be positive (got {alpha}); put the sign on the PauliString"
                )
            for q in string.qubits():
                if q >= self.n:
                    raise ContractError(f"qubit {q} out of range for n={self.n}")
            merged[string.factors] = merged.get(string.factors, 0.0) + alpha * string.sign
        out = []
        for factors, coeff in merged.items():
            if coeff == 0.0:
                continue
            out.append((abs(coeff), PauliString(factors, 1 if coeff > 0 else -1)))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "terms", tuple(out))

    @classmethod
    def from_signed(
        cls, n: int, items: Iterable[tuple[float, Mapping[int, str] | Iterable[tuple[int, str]]]]
    ) -> "LocalHamiltonian":
        """Build from (signed coefficient, factors) pairs; zeros dropped."""
        terms = []
        for coeff, factors in items:
            coeff = float(coeff)
            if coeff == 0.0:
                continue
            terms.append((abs(coeff), PauliString(tuple(dict(factors).items()), 1 if coeff > 0 else -1)))
        return cls(n, tuple(terms))

    @property
    def N(self) -> float:
        """Sum of the positive coefficients (the normalization constant)."""
        return float(sum(alpha for alpha, _ in self.terms))

    @property
    def locality(self) -> int:
        return max((s.weight for _, s in self.terms), default=0)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def has_real_entries(self) -> bool:
        return all(s.has_real_entries() for _, s in self.terms)

    def signed_items(self) -> list[tuple[float, tuple[tuple[int, str], ...]]]:
        return [(alpha * s.sign, s.factors) for alpha, s in self.terms]

    def scaled(self, factor: float) -> "LocalHamiltonian":
        if factor == 0.0:
            return LocalHamiltonian(self.n, ())
        return LocalHamiltonian.from_signed(
            self.n, [(factor * a * s.sign, dict(s.factors)) for a, s in self.terms]
        )

    def __add__(self, other: "LocalHamiltonian") -> "LocalHamiltonian":
        if not isinstance(other, LocalHamiltonian):
            return NotImplemented
        if other.n != self.n:
            raise ContractError("qubit counts differ")
        return LocalHamiltonian(self.n, self.terms + other.terms)


def build_matrix(H: LocalHamiltonian, max_qubits: int = MAX_QUBITS) -> sp.csr_matrix:
    """Realize a LocalHamiltonian as a sparse 2^n x 2^n matrix."""
    if H.n > max_qubits:
        raise ResourceError(f"n={H.n} exceeds the {max_qubits}-qubit realization cap")
    dim = 1 << H.n
    acc = sp.csr_matrix((dim, dim))
    for alpha, string in H.terms:
        acc = acc + alpha * realize_string(string, H.n)
    return sp.csr_matrix(acc)


def embed(local: np.ndarray | sp.spmatrix, qubits: Sequence[int], n: int) -> sp.csr_matrix:
    """Embed an operator on `qubits` (given order, big-endian) into n qubits.

    The local matrix has dimension 2^k with k = len(qubits); bit j of a
    local index addresses qubits[j].
    """
    qubits = tuple(int(q) for q in qubits)
    k = len(qubits)
    if len(set(qubits)) != k:
        raise ContractError("embed qubits must be distinct")
    for q in qubits:
        if q < 0 or q >= n:
            raise ContractError(f"qubit {q} out of range for n={n}")
    local = sp.coo_matrix(local)
    if local.shape != (1 << k, 1 << k):
        raise ContractError(f"local matrix shape {local.shape} does not match {k} qubits")
    target_pos = [n - 1 - q for q in qubits]
    rest_pos = [p for p in range(n - 1, -1, -1) if p not in target_pos]
    nrest = len(rest_pos)
    rest = np.arange(1 << nrest, dtype=np.int64)
    rest_scatter = np.zeros(1 << nrest, dtype=np.int64)
    for j, pos in enumerate(rest_pos):
        # bit (nrest-1-j) of the rest counter lands at global position pos
        rest_scatter |= ((rest >> (nrest - 1 - j)) & 1) << pos

    def scatter_local(v: np.ndarray) -> np.ndarray:
        out = np.zeros_like(v)
        for j, pos in enumerate(target_pos):
            out |= ((v >> (k - 1 - j)) & 1) << pos
        return out

    lrows = scatter_local(local.row.astype(np.int64))
    lcols = scatter_local(local.col.astype(np.int64))
    rows = (lrows[:, None] | rest_scatter[None, :]).ravel()
    cols = (lcols[:, None] | rest_scatter[None, :]).ravel()
    vals = np.repeat(local.data, 1 << nrest)
    return sp.csr_matrix((vals, (rows, cols)), shape=(1 << n, 1 << n))


def pauli_decompose(matrix: np.ndarray | sp.spmatrix, tol: float = 1e-12) -> LocalHamiltonian:
    """Expand a Hermitian matrix on k qubits into weighted Pauli strings.

    Inverse of build_matrix up to the merge rules. Intended for small
    local blocks (k <= 6 or so); cost grows as 8^k.
    """
    dense = np.asarray(matrix.toarray() if sp.issparse(matrix) else matrix, dtype=complex)
    dim = dense.shape[0]
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise ContractError("matrix must be square")
    k = int(round(np.log2(dim)))
    if 1 << k != dim:
        raise ContractError(f"dimension {dim} is not a power of two")
    if np.max(np.abs(dense - dense.conj().T)) > 1e-9 * max(1.0, np.max(np.abs(dense))):
        raise ContractError("matrix is not Hermitian; Pauli coefficients would be complex")
    items = []
    for word in itertools.product("IXYZ", repeat=k):
        op = np.array([[1.0 + 0j]])
        for label in word:
            op = np.kron(op, _PAULI_DENSE[label])
        coeff = np.vdot(op, dense) / dim
        if abs(coeff.imag) > 1e-9:
            raise ContractError("matrix is not Hermitian; Pauli coefficients would be complex")
        if abs(coeff.real) <= tol:
            continue
        factors = {q: label for q, label in enumerate(word) if label != "I"}
        items.append((coeff.real, factors))
    return LocalHamiltonian.from_signed(max(k, 1), items)


def remap_qubits(H: LocalHamiltonian, mapping: Sequence[int], total_n: int) -> LocalHamiltonian:
    """Relabel qubit i of H as mapping[i] inside a total_n-qubit register."""
    mapping = tuple(int(q) for q in mapping)
    if len(set(mapping)) != len(mapping):
        raise ContractError("qubit mapping must be injective")
    if H.locality and max(q for a, s in H.terms for q in s.qubits()) >= len(mapping):
        raise ContractError("mapping does not cover all qubits in use")
    items = []
    for alpha, string in H.terms:
        factors = {mapping[q]: op for q, op in string.factors}
        items.append((alpha * string.sign, factors))
    return LocalHamiltonian.from_signed(total_n, items)


def random_instance(
    n: int,
    locality: int = 2,
    seed: int = 0,
    scale: float = 1.0,
    include_y: bool = False,
) -> LocalHamiltonian:
    """Random field/coupling Hamiltonian with X and Z terms (optionally Y).

    Coefficients are uniform in [-scale, scale]; draws are deterministic
    given the seed. locality 1 gives single-qubit fields only, locality
    2 adds two-qubit XX and ZZ couplings (plus XY when include_y).
    """
    if n < 1:
        raise ContractError("need at least one qubit")
    if locality not in (1, 2):
        raise ContractError("locality must be 1 or 2")
    words: list[dict[int, str]] = []
    for i in range(n):
        words.append({i: "X"})
        words.append({i: "Z"})
        if include_y:
            words.append({i: "Y"})
    if locality == 2:
        for i in range(n):
            for j in range(i + 1, n):
                words.append({i: "X", j: "X"})
                words.append({i: "Z", j: "Z"})
                if include_y:
                    words.append({i: "X", j: "Y"})
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(-scale, scale, size=len(words))
    return LocalHamiltonian.from_signed(n, zip(coeffs, words))
