"""Positive-operator measures over finite perception algebras.

Dropping idempotency and unit trace turns the trace rule into an unnormalized
measure over perception sets. An algebra holds finitely many labeled atoms,
each carrying a positive Hermitian operator; the operator of a set is the sum
over its atoms, so disjoint-union additivity holds by construction. Dividing
by the total measure (when it is usefully nonzero) recovers probabilities,
and ratios of sub-measures give conditional probabilities.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonFiniteError,
    NotSubsetError,
    NumericalIntegrityError,
    UnknownLabelError,
    ValidationError,
    ZeroConditionMeasureError,
    ZeroTotalMeasureError,
)
from .matcore import DEFAULT_TOL, is_hermitian, matrix_from_rows, matrix_to_rows, trace
from .quantum import DensityMatrix, RealityMode, enforce_reality

ZERO_MEASURE_TOL = 1e-12
MEASURE_SLACK = 1e-10


class PovOperator:
    """Positive semidefinite Hermitian operator; not required idempotent or <= I."""

    __slots__ = ("mat",)

    def __init__(self, mat, *, mode: RealityMode = RealityMode.COMPLEX, tol: float = DEFAULT_TOL):
        m = enforce_reality(mode, mat)
        if not is_hermitian(m, tol):
            raise ValidationError("POV operator must be Hermitian within tolerance")
        if float(np.min(np.linalg.eigvalsh(m))) < -tol:
            raise ValidationError("POV operator must be positive semidefinite (eigenvalues >= -tol)")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __setattr__(self, name, value):
        raise AttributeError("PovOperator is immutable")

    def __repr__(self) -> str:
        return f"PovOperator(dim={self.dim})"


class PerceptionAlgebra:
    """Finite family of labeled disjoint atoms, one positive operator each.

    Sets are subsets of the atom labels; the operator of a set is the sum of
    its atoms' operators. Atoms need not sum to the identity, so the total
    measure may differ from 1.
    """

    __slots__ = ("_labels", "_atoms")

    def __init__(self, atoms: Sequence[tuple[str, PovOperator]]):
        labels = []
        table = {}
        for label, op in atoms:
            label = str(label)
            if label in table:
                raise ValidationError(f"duplicate atom label {label!r}")
            if not isinstance(op, PovOperator):
                raise ValidationError("atoms must map labels to PovOperator values")
            labels.append(label)
            table[label] = op
        if not labels:
            raise ValidationError("algebra needs at least one atom")
        dims = {op.dim for op in table.values()}
        if len(dims) != 1:
            raise DimensionMismatchError(f"atom operators have mixed dims {sorted(dims)}")
        object.__setattr__(self, "_labels", tuple(labels))
        object.__setattr__(self, "_atoms", table)

    @classmethod
    def from_matrices(
        cls,
        pairs: Sequence[tuple[str, object]],
        *,
        mode: RealityMode = RealityMode.COMPLEX,
        tol: float = DEFAULT_TOL,
    ) -> "PerceptionAlgebra":
        return cls([(label, PovOperator(mat, mode=mode, tol=tol)) for label, mat in pairs])

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def dim(self) -> int:
        return self._atoms[self._labels[0]].dim

    def atom(self, label: str) -> PovOperator:
        try:
            return self._atoms[label]
        except KeyError:
            raise UnknownLabelError(f"unknown atom label {label!r}") from None

    def __setattr__(self, name, value):
        raise AttributeError("PerceptionAlgebra is immutable")

    def __repr__(self) -> str:
        return f"PerceptionAlgebra(atoms={list(self._labels)!r})"


def _resolve_labels(alg: PerceptionAlgebra, s: Iterable[str]) -> tuple[str, ...]:
    """Validate and deduplicate a label subset, preserving algebra order."""
    wanted = set()
    for label in s:
        label = str(label)
        if label not in alg._atoms:
            raise UnknownLabelError(f"unknown atom label {label!r}")
        wanted.add(label)
    return tuple(label for label in alg.labels if label in wanted)


def union_operator(alg: PerceptionAlgebra, s: Iterable[str]) -> PovOperator:
    """Sum of the atom operators of ``s``; the empty set gives the zero operator."""
    labels = _resolve_labels(alg, s)
    total = np.zeros((alg.dim, alg.dim), dtype=complex)
    for label in labels:
        total = total + alg.atom(label).mat
    return PovOperator(total)


def measure_of(alg: PerceptionAlgebra, s: Iterable[str], rho: DensityMatrix) -> float:
    """Unnormalized measure of the set: Re tr(P(S) rho), clamped at 0."""
    if alg.dim != rho.dim:
        raise DimensionMismatchError(f"algebra dim {alg.dim} vs density dim {rho.dim}")
    value = trace(union_operator(alg, s).mat @ rho.mat).real
    if value < -MEASURE_SLACK:
        raise NumericalIntegrityError(f"measure {value!r} below 0 beyond {MEASURE_SLACK}")
    return max(value, 0.0)


def total_measure(alg: PerceptionAlgebra, rho: DensityMatrix) -> float:
    """Measure of the full perception set (all atoms)."""
    value = measure_of(alg, alg.labels, rho)
    if not math.isfinite(value):
        raise NonFiniteError("total measure is not finite")
    return value


def normalized_prob(alg: PerceptionAlgebra, s: Iterable[str], rho: DensityMatrix) -> float:
    """Probability of the set: measure(S) / measure(M), clamped to [0, 1]."""
    total = total_measure(alg, rho)
    if total <= ZERO_MEASURE_TOL:
        raise ZeroTotalMeasureError(f"total measure {total!r} <= {ZERO_MEASURE_TOL}; cannot normalize")
    ratio = measure_of(alg, s, rho) / total
    if ratio > 1.0 + 1e-9:
        raise NumericalIntegrityError(f"normalized probability {ratio!r} exceeds 1 beyond 1e-9")
    return min(max(ratio, 0.0), 1.0)


def conditional_prob(
    alg: PerceptionAlgebra, s_sub: Iterable[str], m_sub: Iterable[str], rho: DensityMatrix
) -> float:
    """Conditional probability measure(S') / measure(M') for S' inside M'."""
    s_labels = _resolve_labels(alg, s_sub)
    m_labels = _resolve_labels(alg, m_sub)
    if not set(s_labels) <= set(m_labels):
        extra = sorted(set(s_labels) - set(m_labels))
        raise NotSubsetError(f"set is not contained in the conditioning set; extra atoms {extra}")
    denom = measure_of(alg, m_labels, rho)
    if denom <= ZERO_MEASURE_TOL:
        raise ZeroConditionMeasureError(f"conditioning measure {denom!r} <= {ZERO_MEASURE_TOL}")
    return measure_of(alg, s_labels, rho) / denom


def algebra_to_obj(alg: PerceptionAlgebra) -> dict:
    """JSON-ready form: {"atoms": [{"label": ..., "operator": rows}, ...]}."""
    return {
        "atoms": [
            {"label": label, "operator": matrix_to_rows(alg.atom(label).mat)} for label in alg.labels
        ]
    }


def algebra_from_obj(
    obj: Mapping, *, mode: RealityMode = RealityMode.COMPLEX, tol: float = DEFAULT_TOL
) -> PerceptionAlgebra:
    """Parse the JSON form produced by :func:`algebra_to_obj`."""
    if not isinstance(obj, Mapping) or "atoms" not in obj or not isinstance(obj["atoms"], list):
        raise ValidationError('algebra must be an object with an "atoms" array')
    pairs = []
    for i, atom in enumerate(obj["atoms"]):
        if not isinstance(atom, Mapping) or "label" not in atom or "operator" not in atom:
            raise ValidationError(f'algebra atom {i} must carry "label" and "operator"')
        pairs.append((str(atom["label"]), matrix_from_rows(atom["operator"])))
    return PerceptionAlgebra.from_matrices(pairs, mode=mode, tol=tol)
