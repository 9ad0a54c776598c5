"""Hermitian generalization of the classical probability rule.

The probability of a perception set represented by a projector P in state
rho is the trace of P rho. It is invariant under a simultaneous unitary
change of basis, and reduces to the classical rule when both matrices are
diagonal. The product of two projectors is again a projector exactly when
they commute; for non-commuting pairs the meet is refused.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonCommutingError,
    NotRealError,
    NotUnitaryError,
    NumericalIntegrityError,
    ValidationError,
)
from .matcore import DEFAULT_TOL, UNITARY_TOL, as_matrix, is_density, is_projector, max_abs, trace

REAL_IMAG_TOL = 1e-12
PROB_SLACK = 1e-9


class RealityMode(Enum):
    """Scalar field of the theory: complex quantum mechanics or its real restriction."""

    COMPLEX = "complex"
    REAL = "real"


def enforce_reality(mode: RealityMode, a) -> np.ndarray:
    """Pass ``a`` through unchanged; under REAL mode reject imaginary parts > 1e-12."""
    mat = as_matrix(a)
    if mode is RealityMode.REAL:
        worst = float(np.max(np.abs(mat.imag)))
        if worst > REAL_IMAG_TOL:
            raise NotRealError(f"imaginary part {worst:.3e} exceeds {REAL_IMAG_TOL} in REAL mode")
    return mat


class Projector:
    """Hermitian idempotent operator, validated once at construction."""

    __slots__ = ("mat",)

    def __init__(self, mat, *, mode: RealityMode = RealityMode.COMPLEX, tol: float = DEFAULT_TOL):
        m = enforce_reality(mode, mat)
        if not is_projector(m, tol):
            raise ValidationError("matrix is not a projector (Hermitian idempotent) within tolerance")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __setattr__(self, name, value):
        raise AttributeError("Projector is immutable")

    def __repr__(self) -> str:
        return f"Projector(dim={self.dim})"


class DensityMatrix:
    """Positive semidefinite Hermitian unit-trace operator, validated once."""

    __slots__ = ("mat",)

    def __init__(self, mat, *, mode: RealityMode = RealityMode.COMPLEX, tol: float = DEFAULT_TOL):
        m = enforce_reality(mode, mat)
        if not is_density(m, tol):
            raise ValidationError("matrix is not a density matrix (PSD Hermitian, unit trace) within tolerance")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def trace_prob(p: Projector, rho: DensityMatrix) -> float:
    """Probability of the set represented by ``p`` in state ``rho``: Re tr(p rho).

    The trace of a projector against a density matrix is analytically real
    and in [0, 1]; violations beyond 1e-9 raise, smaller ones are clamped.
    """
    if p.dim != rho.dim:
        raise DimensionMismatchError(f"projector dim {p.dim} vs density dim {rho.dim}")
    t = trace(p.mat @ rho.mat)
    if abs(t.imag) > PROB_SLACK:
        raise NumericalIntegrityError(f"trace imaginary part {t.imag:.3e} exceeds {PROB_SLACK}")
    value = t.real
    if value < -PROB_SLACK or value > 1.0 + PROB_SLACK:
        raise NumericalIntegrityError(f"trace probability {value!r} outside [0, 1] beyond {PROB_SLACK}")
    return min(max(value, 0.0), 1.0)


def unitary_conjugate(u, a) -> np.ndarray:
    """Change of basis u a u^dagger.

    Raises NotUnitaryError when |u^dagger u - I|_max > 1e-9.
    """
    um = as_matrix(u)
    am = as_matrix(a)
    if um.shape != am.shape:
        raise DimensionMismatchError(f"unitary dim {um.shape[0]} vs operand dim {am.shape[0]}")
    defect = max_abs(um.conj().T @ um - np.eye(um.shape[0]))
    if defect > UNITARY_TOL:
        raise NotUnitaryError(f"unitarity defect {defect:.3e} exceeds {UNITARY_TOL}")
    return um @ am @ um.conj().T


def check_invariance(p: Projector, rho: DensityMatrix, u) -> float:
    """|tr(p rho) - tr(p~ rho~)| after conjugating both by ``u``; <= 1e-9 always."""
    p_tilde = Projector(unitary_conjugate(u, p.mat))
    rho_tilde = DensityMatrix(unitary_conjugate(u, rho.mat))
    return abs(trace_prob(p, rho) - trace_prob(p_tilde, rho_tilde))


def commutes(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Whether |ab - ba|_max <= tol * max(1, |a|_max * |b|_max)."""
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape != bm.shape:
        raise DimensionMismatchError(f"dims {am.shape[0]} vs {bm.shape[0]}")
    return max_abs(am @ bm - bm @ am) <= tol * max(1.0, max_abs(am) * max_abs(bm))


def projector_meet(p: Projector, q: Projector) -> Projector:
    """Product of two commuting projectors, which is again a projector.

    For non-commuting projectors the product is not a projection operator,
    so the meet is refused with NonCommutingError rather than returned.
    """
    if p.dim != q.dim:
        raise DimensionMismatchError(f"dims {p.dim} vs {q.dim}")
    if not commutes(p.mat, q.mat, DEFAULT_TOL):
        raise NonCommutingError("projectors do not commute; their product is not a projection operator")
    return Projector(p.mat @ q.mat)


def is_pure(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    """Diagnostic purity check: tr(rho^2) within ``tol`` of 1."""
    return abs(trace(rho.mat @ rho.mat).real - 1.0) <= tol
