"""Sign-eliminating maps from local Hamiltonians to stoquastic and stochastic form.

The two-element group {1,-1} acts on one ancilla qubit through {I, X};
the four-element group {1,i,-1,-i} acts on two ancilla qubits through
powers of the 4-cycle F. Replacing scalar signs/phases by these
permutation blocks removes negative and complex entries while keeping
the original spectrum inside an invariant ancilla sector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ContractError
from .pauli import LocalHamiltonian, build_matrix, realize_string

_I2 = sp.identity(2, format="csr")
_X2 = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))

# F|l> = |l-1 mod 4>, so F has eigenvalue i^j on v_j.
_F = sp.csr_matrix((np.ones(4), ((np.arange(4) - 1) % 4, np.arange(4))), shape=(4, 4))
_F_POW = [sp.identity(4, format="csr"), _F, _F @ _F, _F @ _F @ _F]

MINUS = np.array([1.0, -1.0]) / np.sqrt(2.0)
PLUS = np.array([1.0, 1.0]) / np.sqrt(2.0)


def sector_vector_z4(j: int) -> np.ndarray:
    """Eigenvector v_j = (1/2) sum_l i^(lj) |l> of the ancilla 4-cycle."""
    return 0.5 * np.array([1j ** ((l * j) % 4) for l in range(4)])


def _z4_basis() -> dict[str, np.ndarray]:
    return {f"v{j}": sector_vector_z4(j) for j in range(4)}


_Z2_BASIS = {"-": MINUS, "+": PLUS}


@dataclass(frozen=True)
class MappedHamiltonian:
    """Result of a sign-elimination map.

    The realized matrix is always sum(weight * term) over `terms`; for
    the normalized maps each term is a permutation matrix and the
    weights sum to 1, which is what makes the result stochastic.
    """

    n: int
    ancilla_count: int
    terms: tuple[tuple[float, sp.csr_matrix], ...]
    normalization: float
    kind: str
    p: float | None = None
    warnings: tuple[str, ...] = ()

    @property
    def total_qubits(self) -> int:
        return self.n + self.ancilla_count

    @property
    def dim(self) -> int:
        return 1 << self.total_qubits

    @property
    def sector_basis(self) -> dict[str, np.ndarray]:
        if self.ancilla_count == 1:
            return dict(_Z2_BASIS)
        return _z4_basis()

    @property
    def sector_labels(self) -> tuple[str, ...]:
        return tuple(self.sector_basis)

    def realize(self) -> sp.csr_matrix:
        acc = sp.csr_matrix((self.dim, self.dim))
        for w, G in self.terms:
            acc = acc + w * G
        return sp.csr_matrix(acc)

    def sector_isometry(self, sector: str) -> sp.csr_matrix:
        basis = self.sector_basis
        if sector not in basis:
            raise ContractError(f"unknown sector {sector!r}; have {sorted(basis)}")
        a = basis[sector].reshape(-1, 1)
        return sp.kron(sp.identity(1 << self.n, format="csr"), sp.csr_matrix(a), format="csr")

    def sector_operator(self, sector: str) -> sp.csr_matrix:
        V = self.sector_isometry(sector)
        return sp.csr_matrix(V.getH() @ self.realize() @ V)


@dataclass(frozen=True)
class SectorDecomposition:
    """Effective operators of the four ancilla sectors of the Z4 map.

    operators[1] is the input Hamiltonian itself and operators[3] its
    entrywise complex conjugate; 0 and 2 carry the entrywise absolute
    value combinations picked up by the map. No 1/N normalization here.
    """

    operators: dict[int, sp.csr_matrix]

    def H(self, j: int) -> sp.csr_matrix:
        return self.operators[j]


def _positive_parts(mat: sp.spmatrix) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Split a real matrix into (positive part, negated negative part)."""
    coo = sp.coo_matrix(mat)
    vals = coo.data.real
    pos = vals > 0
    neg = vals < 0
    shape = coo.shape
    P = sp.csr_matrix((vals[pos], (coo.row[pos], coo.col[pos])), shape=shape)
    Q = sp.csr_matrix((-vals[neg], (coo.row[neg], coo.col[neg])), shape=shape)
    return P, Q


def _real_string_matrix(string, n: int) -> sp.csr_matrix:
    P = realize_string(string, n)
    if np.iscomplexobj(P.data) and P.nnz and np.max(np.abs(P.data.imag)) > 0:
        raise ContractError(
            f"term {string} has complex entries; use stochastize_complex"
        )
    return sp.csr_matrix(P.real)


def stoquastize(H: LocalHamiltonian) -> MappedHamiltonian:
    """Map a real-entried Hamiltonian to a stoquastic one on n+1 qubits.

    Writing H = -sum_k alpha_k T_k, each scalar entry of T_k is replaced
    through 1 -> I, -1 -> X on the ancilla. The realized matrix equals
    H (x) |-><-|  -  Hbar (x) |+><+|, so the |-> sector reproduces H.
    """
    terms = []
    for alpha, string in H.terms:
        T = -1.0 * _real_string_matrix(string, H.n)
        Tp, Tm = _positive_parts(T)
        Gt = sp.kron(Tp, _I2, format="csr") + sp.kron(Tm, _X2, format="csr")
        terms.append((float(alpha), sp.csr_matrix(-Gt)))
    return MappedHamiltonian(
        n=H.n, ancilla_count=1, terms=tuple(terms), normalization=H.N, kind="stoquastic"
    )


def stochastize(H: LocalHamiltonian) -> MappedHamiltonian:
    """Map a real-entried Hamiltonian to a symmetric doubly stochastic matrix.

    Each term S_k (unit entries) becomes the permutation S+ (x) I +
    S- (x) X; the convex combination with weights alpha_k / N is the
    realized matrix, equal to (H (x) |-><-| + Hbar (x) |+><+|) / N.
    """
    if not H.terms:
        raise ContractError("cannot normalize an empty Hamiltonian (N = 0)")
    N = H.N
    terms = []
    for alpha, string in H.terms:
        S = _real_string_matrix(string, H.n)
        Sp, Sm = _positive_parts(S)
        G = sp.kron(Sp, _I2, format="csr") + sp.kron(Sm, _X2, format="csr")
        terms.append((float(alpha) / N, sp.csr_matrix(G)))
    return MappedHamiltonian(
        n=H.n, ancilla_count=1, terms=tuple(terms), normalization=N, kind="stochastic"
    )


def add_ancilla_penalty(mapped: MappedHamiltonian, p: float) -> MappedHamiltonian:
    """Mix a stochastic map with the ancilla penalty (1+X)/2 at weight 1-p.

    For p < 1/3 the lower 2^n eigenvalues are (p/N) spec(H) and the
    upper ones sit at (1-p) + (p/N) spec(Hbar); larger p only earns a
    warning since the split is no longer guaranteed.
    """
    if mapped.kind != "stochastic":
        raise ContractError("penalty applies to stochastize output")
    if not (0.0 < p < 1.0):
        raise ContractError(f"p must lie in (0, 1), got {p}")
    warnings = mapped.warnings
    if p >= 1.0 / 3.0:
        warnings = warnings + (f"p={p} is not < 1/3; spectral split not guaranteed",)
    dim = mapped.dim
    eye = sp.identity(dim, format="csr")
    x_anc = sp.kron(sp.identity(dim // 2, format="csr"), _X2, format="csr")
    terms = tuple((p * w, G) for w, G in mapped.terms)
    terms = terms + (((1.0 - p) / 2.0, eye), ((1.0 - p) / 2.0, x_anc))
    return MappedHamiltonian(
        n=mapped.n,
        ancilla_count=1,
        terms=terms,
        normalization=mapped.normalization,
        kind="stochastic-penalty",
        p=p,
        warnings=warnings,
    )


def stochastize_complex(H: LocalHamiltonian) -> tuple[MappedHamiltonian, SectorDecomposition]:
    """Map an arbitrary Hamiltonian to a stochastic matrix on n+2 qubits.

    Entry phases {1, i, -1, -i} are replaced by powers {I, F, F^2, F^3}
    of the ancilla 4-cycle. Sector v_1 carries H/N, sector v_3 carries
    the conjugate; the returned decomposition lists all four sector
    operators without the 1/N factor.
    """
    if not H.terms:
        raise ContractError("cannot normalize an empty Hamiltonian (N = 0)")
    N = H.N
    dim = 1 << H.n
    terms = []
    sector_ops = {j: sp.csr_matrix((dim, dim), dtype=complex) for j in range(4)}
    for alpha, string in H.terms:
        P = realize_string(string, H.n)
        coo = sp.coo_matrix(P)
        shape = coo.shape
        vals = coo.data.astype(complex)
        Sp, Sm = _positive_parts(sp.coo_matrix((vals.real, (coo.row, coo.col)), shape=shape))
        Ap, Am = _positive_parts(sp.coo_matrix((vals.imag, (coo.row, coo.col)), shape=shape))
        G = (
            sp.kron(Sp, _F_POW[0], format="csr")
            + sp.kron(Sm, _F_POW[2], format="csr")
            + sp.kron(Ap, _F_POW[1], format="csr")
            + sp.kron(Am, _F_POW[3], format="csr")
        )
        terms.append((float(alpha) / N, sp.csr_matrix(G)))
        for j in range(4):
            w = [1.0, 1j ** (2 * j % 4), 1j ** (j % 4), 1j ** (3 * j % 4)]
            sector_ops[j] = sector_ops[j] + float(alpha) * (
                w[0] * Sp + w[1] * Sm + w[2] * Ap + w[3] * Am
            )
    decomp = SectorDecomposition({j: sp.csr_matrix(sector_ops[j]) for j in range(4)})
    mapped = MappedHamiltonian(
        n=H.n, ancilla_count=2, terms=tuple(terms), normalization=N, kind="stochastic-z4"
    )
    return mapped, decomp


def add_penalty_complex(mapped: MappedHamiltonian, p: float) -> MappedHamiltonian:
    """Penalize the even sectors of a Z4 map with X on the first ancilla.

    v_0 and v_2 are +1 eigenvectors of that X, v_1 and v_3 are -1
    eigenvectors, so the ground space doubles: the ground state of H in
    v_1 and its conjugate in v_3 stay degenerate.
    """
    if mapped.kind != "stochastic-z4":
        raise ContractError("penalty applies to stochastize_complex output")
    if not (0.0 < p < 1.0 / 3.0):
        raise ContractError(f"p must lie in (0, 1/3), got {p}")
    dim = mapped.dim
    eye = sp.identity(dim, format="csr")
    x_first = sp.kron(
        sp.identity(dim // 4, format="csr"), sp.kron(_X2, _I2, format="csr"), format="csr"
    )
    terms = tuple((p * w, G) for w, G in mapped.terms)
    terms = terms + (((1.0 - p) / 2.0, eye), ((1.0 - p) / 2.0, x_first))
    return MappedHamiltonian(
        n=mapped.n,
        ancilla_count=2,
        terms=terms,
        normalization=mapped.normalization,
        kind="stochastic-z4-penalty",
        p=p,
        warnings=mapped.warnings,
    )


def _min_eig_dense(A: sp.spmatrix) -> float:
    return float(np.linalg.eigvalsh(A.toarray())[0])


def stochastize_ff(terms: list[LocalHamiltonian], p: float) -> list[sp.csr_matrix]:
    """Map a list of psd terms to stochastic psd terms sharing one ancilla register.

    Output term j is the convex combination
        (p N_j / N) Hhat_j + (1 - p N_j / N) (1 + X_anc)/2,
    so every term is itself doubly stochastic and psd, not just the sum.
    Each term annihilates (common kernel) (x) |-> when the input sum is
    frustration free, and the summed low sector is exactly (p/N) times the
    input sum, so the gap scales by p/N.
    """
    if not terms:
        raise ContractError("need at least one term")
    if not (0.0 < p < 1.0 / 3.0):
        raise ContractError(f"p must lie in (0, 1/3), got {p}")
    n = terms[0].n
    for H in terms:
        if H.n != n:
            raise ContractError("terms act on different register sizes")
        if not H.terms:
            raise ContractError("empty term has no normalization")
        if _min_eig_dense(build_matrix(H)) < -1e-9:
            raise ContractError("input term is not positive semidefinite")
    use_z4 = not all(H.has_real_entries() for H in terms)
    N = sum(H.N for H in terms)
    out = []
    for H in terms:
        if use_z4:
            mapped, _ = stochastize_complex(H)
            x_pen = sp.kron(
                sp.identity((1 << n), format="csr"), sp.kron(_X2, _I2, format="csr"), format="csr"
            )
        else:
            mapped = stochastize(H)
            x_pen = sp.kron(sp.identity(1 << n, format="csr"), _X2, format="csr")
        eye = sp.identity(mapped.dim, format="csr")
        w = p * H.N / N
        op = w * mapped.realize() + (1.0 - w) * 0.5 * (eye + x_pen)
        out.append(sp.csr_matrix(op))
    return out


def sector_spectrum(mapped: MappedHamiltonian, sector: str) -> np.ndarray:
    """Eigenvalues of the realized matrix inside one ancilla sector, ascending."""
    op = mapped.sector_operator(sector).toarray()
    if np.max(np.abs(op - op.conj().T)) <= 1e-10:
        return np.linalg.eigvalsh(op)
    vals = np.linalg.eigvals(op)
    return np.sort_complex(vals)


def sector_projector(n_work: int, ancilla_state: np.ndarray) -> sp.csr_matrix:
    """Projector onto (work space) (x) |ancilla_state> for leakage tracking."""
    a = np.asarray(ancilla_state, dtype=complex).ravel()
    a = a / np.linalg.norm(a)
    P = sp.csr_matrix(np.outer(a, a.conj()))
    return sp.kron(sp.identity(1 << n_work, format="csr"), P, format="csr")
