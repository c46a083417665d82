"""Dense symmetric-matrix kernel.

Small wrappers around numpy that the rest of the package builds on:

* ``kron``        -- Kronecker product with an entry-count guard
* ``trace_inner`` -- trace inner product <a, b> = trace(a @ b) for symmetric a
* ``vec_stack``   -- column-major vectorization
* ``sym_eigs``    -- full spectrum of a symmetric matrix, sorted ascending,
                     with an always-on residual check

Matrices are plain ``numpy.ndarray`` objects built symmetrically by
construction; ``sym_eigs`` enforces exact (tolerance-zero) symmetry at the
boundary.  Dense work is size-capped: ``DEFAULT_DENSE_CAP`` bounds the side
length of any matrix we are willing to factor, and the environment variable
``SIMPLICIAL_GAP_MAX_DENSE`` overrides it.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "DEFAULT_DENSE_CAP",
    "DENSE_CAP_ENV_VAR",
    "KRON_MAX_ENTRIES",
    "ConvergenceError",
    "SizeLimitError",
    "dense_cap",
    "kron",
    "sym_eigs",
    "trace_inner",
    "vec_stack",
]

DEFAULT_DENSE_CAP = 2048
DENSE_CAP_ENV_VAR = "SIMPLICIAL_GAP_MAX_DENSE"

# kron refuses to allocate results beyond this many entries
KRON_MAX_ENTRIES = 10_000_000


class SizeLimitError(ValueError):
    """A dense operation would exceed the configured size cap."""


class ConvergenceError(RuntimeError):
    """The eigensolver failed its accuracy contract.

    Carries ``residual`` (worst entrywise |m v - lambda v| seen, or None if
    the backend failed outright) and ``dim``.
    """

    def __init__(self, message: str, residual: float | None, dim: int):
        super().__init__(message)
        self.residual = residual
        self.dim = dim


def dense_cap(explicit: int | None = None) -> int:
    """Resolve the dense-size cap.

    Precedence: explicit argument, then SIMPLICIAL_GAP_MAX_DENSE, then
    DEFAULT_DENSE_CAP.  Raises ValueError on a malformed environment value.
    """
    if explicit is not None:
        cap = int(explicit)
        if cap <= 0:
            raise ValueError(f"dense cap must be positive, got {cap}")
        return cap
    raw = os.environ.get(DENSE_CAP_ENV_VAR)
    if raw is not None:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(
                f"{DENSE_CAP_ENV_VAR} must be an integer, got {raw!r}"
            ) from None
        if cap <= 0:
            raise ValueError(f"{DENSE_CAP_ENV_VAR} must be positive, got {cap}")
        return cap
    return DEFAULT_DENSE_CAP


def _as_square(m: np.ndarray, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {m.shape}")
    return m


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, guarded against runaway sizes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("kron expects two matrices")
    entries = a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1]
    if entries > KRON_MAX_ENTRIES:
        raise SizeLimitError(
            f"kron result would hold {entries} entries "
            f"(cap {KRON_MAX_ENTRIES})"
        )
    return np.kron(a, b)


def trace_inner(a: np.ndarray, b: np.ndarray) -> float:
    """<a, b> = trace(a^T b) = sum_ij a_ij b_ij.

    For the symmetric matrices used throughout this equals trace(a @ b),
    but is computed entrywise (no matrix product).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(a * b))


def vec_stack(m: np.ndarray) -> np.ndarray:
    """Stack the columns of m into one long vector (column-major vec)."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError("vec_stack expects a matrix")
    return m.reshape(-1, order="F").copy()


def sym_eigs(
    m: np.ndarray,
    tol: float = 1e-9,
    max_dim: int | None = None,
    return_vectors: bool = False,
):
    """Full spectrum of a symmetric matrix, ascending.

    The input must be exactly symmetric (the package builds all its
    matrices symmetrically, so equality is checked with zero tolerance).
    Accuracy contract: every eigenpair satisfies
    ``max|m v - lambda v| <= tol * max|m|``; violations raise
    ConvergenceError.  Dimensions above the dense cap raise SizeLimitError.

    With ``return_vectors=True`` also returns the orthonormal eigenvector
    matrix (diagnostic use).
    """
    m = _as_square(m, "m")
    dim = m.shape[0]
    cap = dense_cap(max_dim)
    if dim > cap:
        raise SizeLimitError(f"matrix side {dim} exceeds dense cap {cap}")
    if not np.array_equal(m, m.T):
        raise ValueError("sym_eigs requires an exactly symmetric matrix")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")

    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(
            f"eigendecomposition failed at dim {dim}: {exc}", None, dim
        ) from exc

    scale = float(np.abs(m).max())
    if scale > 0.0:
        residual = float(np.abs(m @ vecs - vecs * vals).max())
        if residual > tol * scale:
            raise ConvergenceError(
                f"eigenpair residual {residual:.3e} exceeds "
                f"{tol:.1e} * {scale:.3e} at dim {dim}",
                residual,
                dim,
            )

    order = np.argsort(vals, kind="stable")
    vals = np.ascontiguousarray(vals[order])
    if return_vectors:
        return vals, np.ascontiguousarray(vecs[:, order])
    return vals
