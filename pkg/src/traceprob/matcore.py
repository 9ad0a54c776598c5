"""Dense complex matrix arithmetic and spectral decomposition.

All matrices are square ``numpy`` arrays of ``complex128``. Class-membership
checks (Hermitian, projector, density) are tolerance based: a matrix ``a``
passes at tolerance ``tol`` when its defect is at most ``tol * max(1, |a|_max)``
with ``|.|_max`` the largest entry magnitude. The default tolerance is
robust for double precision at the dimensions this package targets (n <= 64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError, ValidationError

DEFAULT_TOL = 1e-10
UNITARY_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a fresh square complex matrix with finite entries.

    Raises
    ------
    ValidationError
        If the input is not square 2-D with dim >= 1, or carries NaN/Inf.
    """
    mat = np.array(a, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
        raise ValidationError(f"expected a square matrix with dim >= 1, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValidationError("matrix entries must be finite (no NaN/Inf)")
    return mat


def max_abs(a) -> float:
    """Largest entry magnitude (the max-norm used by all tolerance checks)."""
    return float(np.max(np.abs(np.asarray(a))))


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def mat_mul(a, b) -> np.ndarray:
    """Matrix product of two equal-dimension square matrices."""
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape != bm.shape:
        raise DimensionMismatchError(f"cannot multiply {am.shape[0]}x{am.shape[0]} by {bm.shape[0]}x{bm.shape[0]}")
    return am @ bm


def trace(a) -> complex:
    """Sum of the diagonal, correctly rounded (``math.fsum`` per component)."""
    diag = np.diagonal(as_matrix(a))
    return complex(math.fsum(diag.real), math.fsum(diag.imag))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``a`` equals its adjoint within ``tol`` (relative to max(1, |a|_max))."""
    mat = as_matrix(a)
    return max_abs(mat - mat.conj().T) <= tol * max(1.0, max_abs(mat))


def is_projector(a, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``a`` is Hermitian and idempotent within ``tol``."""
    mat = as_matrix(a)
    if not is_hermitian(mat, tol):
        return False
    return max_abs(mat @ mat - mat) <= tol * max(1.0, max_abs(mat))


def is_density(a, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``a`` is Hermitian, positive semidefinite (eigenvalues >= -tol),
    and of unit trace (|trace - 1| <= tol)."""
    mat = as_matrix(a)
    if not is_hermitian(mat, tol):
        return False
    if abs(trace(mat) - 1.0) > tol:
        return False
    return float(np.min(np.linalg.eigvalsh(mat))) >= -tol


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition A = V diag(eigenvalues) V^dagger of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; the columns of ``eigenvectors`` are
    orthonormal. Each eigenvector is phase-fixed so that its first component of
    largest magnitude is real and nonnegative; within a degenerate cluster no
    further ordering of eigenvectors is guaranteed.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def hermitian_eig(a, tol: float = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    a : array_like
        Square matrix; must pass :func:`is_hermitian` at ``tol``.
    tol : float
        Hermiticity tolerance for the precondition check.

    Raises
    ------
    NotHermitianError
        If the Hermiticity defect exceeds ``tol * max(1, |a|_max)``.
    """
    mat = as_matrix(a)
    if not is_hermitian(mat, tol):
        raise NotHermitianError(
            f"Hermiticity defect {max_abs(mat - mat.conj().T):.3e} exceeds tolerance"
        )
    values, vectors = np.linalg.eigh(mat)
    n = mat.shape[0]
    pivot_rows = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[pivot_rows, np.arange(n)]
    phases = pivots / np.abs(pivots)
    vectors = vectors * phases.conj()[np.newaxis, :]
    return EigenDecomposition(values.astype(float), vectors.astype(complex))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Seeded Haar-distributed unitary (QR of a complex Ginibre matrix).

    Deterministic for a fixed seed (PCG64 stream); the R-diagonal phase fix
    makes the distribution unitarily invariant.
    """
    if dim < 1:
        raise ValidationError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))[np.newaxis, :]


def random_orthogonal(dim: int, seed: int) -> np.ndarray:
    """Seeded random real orthogonal matrix, the REAL-mode counterpart of
    :func:`random_unitary` (basis changes in real quantum mechanics)."""
    if dim < 1:
        raise ValidationError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    signs = np.where(np.diagonal(r) < 0.0, -1.0, 1.0)
    return (q * signs[np.newaxis, :]).astype(complex)


def matrix_to_rows(a) -> list:
    """Serialize to the repo-wide JSON form: rows of ``[re, im]`` pairs."""
    mat = as_matrix(a)
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def matrix_from_rows(rows) -> np.ndarray:
    """Parse the repo-wide JSON matrix form back to a square complex matrix."""
    if not isinstance(rows, list) or not rows:
        raise ValidationError("matrix must be a non-empty JSON array of rows")
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ValidationError(f"matrix row {i} must be an array of {n} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise ValidationError(f"matrix entry ({i},{j}) must be a [re, im] pair of numbers")
            out[i, j] = complex(entry[0], entry[1])
    return as_matrix(out)
