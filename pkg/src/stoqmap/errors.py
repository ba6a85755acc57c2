"""Exception types shared across the package."""

from __future__ import annotations


class ContractError(ValueError):
    """An input violates a documented precondition."""


class ResourceError(RuntimeError):
    """A requested computation exceeds a configured size cap."""


class ConvergenceError(RuntimeError):
    """An iterative eigensolver failed to converge.

    Carries the best residual seen so the caller can decide whether
    the partial answer is usable.
    """

    def __init__(self, message: str, best_residual: float | None = None):
        super().__init__(message)
        self.best_residual = best_residual
