"""Structural predicates on operator matrices.

classify() reproduces, within a tolerance, the matrix classes the
transformations are supposed to land in: stoquastic (Hermitian with
nonpositive off-diagonal entries), stochastic (nonnegative entries,
unit column sums), doubly stochastic, permutation, projector, psd.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ContractError, ConvergenceError, ResourceError

DEFAULT_TOL = 1e-10
DENSE_CAP = 4096


@dataclass(frozen=True)
class MatrixClassFlags:
    hermitian: bool
    nonnegative_entries: bool
    stoquastic: bool
    column_stochastic: bool
    doubly_stochastic: bool
    symmetric: bool
    permutation: bool
    projector: bool
    psd: bool
    tol: float

    def as_dict(self) -> dict[str, bool | float]:
        return {
            "hermitian": self.hermitian,
            "nonnegative_entries": self.nonnegative_entries,
            "stoquastic": self.stoquastic,
            "column_stochastic": self.column_stochastic,
            "doubly_stochastic": self.doubly_stochastic,
            "symmetric": self.symmetric,
            "permutation": self.permutation,
            "projector": self.projector,
            "psd": self.psd,
            "tol": self.tol,
        }


def _as_csr(M) -> sp.csr_matrix:
    if sp.issparse(M):
        return M.tocsr()
    return sp.csr_matrix(np.asarray(M))


def _max_abs(A: sp.spmatrix) -> float:
    return float(np.max(np.abs(A.data))) if A.nnz else 0.0


def _min_eigenvalue(A: sp.csr_matrix, dense_cap: int) -> float:
    dim = A.shape[0]
    if dim <= dense_cap:
        return float(np.linalg.eigvalsh(A.toarray())[0])
    v0 = np.full(dim, 1.0 / np.sqrt(dim))
    try:
        vals = spla.eigsh(A, k=1, which="SA", v0=v0, return_eigenvectors=False)
    except spla.ArpackNoConvergence as exc:
        raise ConvergenceError("smallest-eigenvalue iteration did not converge") from exc
    return float(vals[0])


def classify(M, tol: float = DEFAULT_TOL, dense_cap: int = DENSE_CAP) -> MatrixClassFlags:
    """Evaluate all structural flags for a square matrix."""
    A = _as_csr(M)
    if A.shape[0] != A.shape[1]:
        raise ContractError("classify expects a square matrix")
    data = A.data
    re = data.real if A.nnz else np.zeros(0)
    im = data.imag if np.iscomplexobj(data) and A.nnz else np.zeros(0)
    real_entries = im.size == 0 or float(np.max(np.abs(im))) <= tol

    hermitian = _max_abs(A - A.getH()) <= tol
    symmetric = _max_abs(A - A.T) <= tol
    nonneg = real_entries and (re.size == 0 or float(re.min()) >= -tol)

    offdiag = A - sp.diags(A.diagonal())
    off_data = offdiag.data
    off_ok = off_data.size == 0 or (
        float(off_data.real.max()) <= tol
        and (not np.iscomplexobj(off_data) or float(np.max(np.abs(off_data.imag))) <= tol)
    )
    stoquastic = hermitian and off_ok

    col_sums = np.asarray(A.sum(axis=0)).ravel()
    row_sums = np.asarray(A.sum(axis=1)).ravel()
    column_stochastic = nonneg and bool(np.max(np.abs(col_sums - 1.0)) <= tol)
    doubly_stochastic = column_stochastic and bool(np.max(np.abs(row_sums - 1.0)) <= tol)

    permutation = False
    if doubly_stochastic:
        near0 = np.abs(data) <= tol
        near1 = np.abs(data - 1.0) <= tol
        permutation = bool(np.all(near0 | near1))

    projector = False
    psd = False
    if hermitian:
        projector = _max_abs((A @ A) - A) <= tol
        psd = _min_eigenvalue(A, dense_cap) >= -tol

    return MatrixClassFlags(
        hermitian=hermitian,
        nonnegative_entries=nonneg,
        stoquastic=stoquastic,
        column_stochastic=column_stochastic,
        doubly_stochastic=doubly_stochastic,
        symmetric=symmetric,
        permutation=permutation,
        projector=projector,
        psd=psd,
        tol=tol,
    )


def kernel_projector_complement(M, tol: float = DEFAULT_TOL, dense_cap: int = DENSE_CAP) -> sp.csr_matrix:
    """Return 1 - P where P projects onto the (numerical) kernel of M.

    M must be Hermitian positive semidefinite; eigenvalues <= tol count
    as kernel. Used to rewrite psd constraint operators as projectors.
    """
    A = _as_csr(M)
    dim = A.shape[0]
    if A.shape[0] != A.shape[1]:
        raise ContractError("expected a square matrix")
    if dim > dense_cap:
        raise ResourceError(f"dimension {dim} exceeds the dense cap {dense_cap}")
    if _max_abs(A - A.getH()) > max(tol, 1e-10):
        raise ContractError("matrix is not Hermitian")
    dense = A.toarray()
    vals, vecs = np.linalg.eigh(dense)
    if vals[0] < -max(tol, 1e-8):
        raise ContractError(f"matrix is not psd (lowest eigenvalue {vals[0]:.3e})")
    kernel = vecs[:, vals <= tol]
    P = kernel @ kernel.conj().T
    out = np.eye(dim, dtype=P.dtype) - P
    out[np.abs(out) < 1e-14] = 0.0
    if np.max(np.abs(out.imag)) <= 1e-14:
        out = out.real
    return sp.csr_matrix(out)
