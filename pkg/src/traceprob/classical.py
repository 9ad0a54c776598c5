"""Deterministic cyclic systems and the classical probability rule.

A classical system here is a periodic schedule over n states. A perception
set is a subset of the n state labels held as a 0/1 characteristic vector;
its probability is the dot product with the dwell-fraction vector, which is
also the trace of the diagonal projector against the diagonal density matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, ValidationError

FRACTION_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ClassicalCycle:
    """Periodic schedule of (state, dwell duration) entries, states 1-based.

    Every state 1..n must appear somewhere in the schedule and every duration
    must be strictly positive. A state may be visited more than once per
    period; dwell fractions are summed over all its visits.
    """

    n: int
    schedule: tuple[tuple[int, float], ...]

    def __init__(self, n: int, schedule: Iterable[Sequence]):
        object.__setattr__(self, "n", int(n))
        entries = []
        for entry in schedule:
            state, duration = entry
            entries.append((int(state), float(duration)))
        object.__setattr__(self, "schedule", tuple(entries))
        if self.n < 1:
            raise ValidationError("cycle needs at least one state")
        if not self.schedule:
            raise ValidationError("schedule must be non-empty")
        seen = set()
        for state, duration in self.schedule:
            if not 1 <= state <= self.n:
                raise ValidationError(f"state {state} outside 1..{self.n}")
            if not (math.isfinite(duration) and duration > 0.0):
                raise ValidationError(f"dwell duration {duration} must be finite and > 0")
            seen.add(state)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise ValidationError(f"every state must appear in the schedule; missing {missing}")

    @cached_property
    def _boundaries(self) -> np.ndarray:
        """Cumulative dwell end times; the last entry is the period T."""
        return np.cumsum([duration for _, duration in self.schedule])

    @cached_property
    def _states(self) -> np.ndarray:
        return np.array([state for state, _ in self.schedule], dtype=np.int64)

    @property
    def period(self) -> float:
        return float(self._boundaries[-1])

    def state_at(self, t: float) -> int:
        """State occupied at time t (t reduced mod T, dwells half-open [start, end))."""
        return int(self._states[self._dwell_indices(np.array([t % self.period]))[0]])

    def _dwell_indices(self, times: np.ndarray) -> np.ndarray:
        """Schedule-entry index for each time in [0, T); boundary times roll forward."""
        reduced = np.where(times >= self.period, 0.0, times)
        idx = np.searchsorted(self._boundaries, reduced, side="right")
        return np.minimum(idx, len(self.schedule) - 1)


@dataclass(frozen=True)
class PerceptionSet:
    """Subset of n perception labels as a 0/1 characteristic vector."""

    chi: tuple[int, ...]

    def __init__(self, chi: Iterable):
        values = tuple(int(c) for c in chi)
        if not values:
            raise ValidationError("characteristic vector must have dimension >= 1")
        if any(c not in (0, 1) for c in values):
            raise ValidationError("characteristic vector entries must be exactly 0 or 1")
        object.__setattr__(self, "chi", values)

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "PerceptionSet":
        """Build from 1-based member indices."""
        member_set = set(int(i) for i in members)
        if any(not 1 <= i <= n for i in member_set):
            raise ValidationError(f"members must lie in 1..{n}")
        return cls(tuple(1 if i in member_set else 0 for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.chi)

    @property
    def members(self) -> tuple[int, ...]:
        """1-based indices of the labels in the set."""
        return tuple(i + 1 for i, c in enumerate(self.chi) if c == 1)


@dataclass(frozen=True)
class FractionVector:
    """Nonnegative probability weights summing to 1 (within 1e-9).

    Construction rejects unnormalized input rather than silently fixing it;
    use :meth:`normalized` to renormalize explicitly.
    """

    f: tuple[float, ...]

    def __init__(self, f: Iterable[float]):
        values = tuple(float(x) for x in f)
        if not values:
            raise ValidationError("fraction vector must have dimension >= 1")
        if any(not (math.isfinite(x) and x >= 0.0) for x in values):
            raise ValidationError("fractions must be finite and >= 0")
        total = math.fsum(values)
        if abs(total - 1.0) > FRACTION_SUM_TOL:
            raise ValidationError(f"fractions must sum to 1 within {FRACTION_SUM_TOL}; got {total!r}")
        object.__setattr__(self, "f", values)

    @classmethod
    def normalized(cls, values: Iterable[float]) -> "FractionVector":
        """Divide nonnegative weights by their sum."""
        raw = [float(x) for x in values]
        if any(not (math.isfinite(x) and x >= 0.0) for x in raw):
            raise ValidationError("weights must be finite and >= 0")
        total = math.fsum(raw)
        if total <= 0.0:
            raise ValidationError("cannot normalize weights with zero sum")
        return cls(x / total for x in raw)

    @property
    def n(self) -> int:
        return len(self.f)


def _check_same_dim(n1: int, n2: int) -> None:
    if n1 != n2:
        raise DimensionMismatchError(f"dimension mismatch: {n1} vs {n2}")


def char_and(s: PerceptionSet, s2: PerceptionSet) -> PerceptionSet:
    """Intersection: componentwise product of characteristic vectors."""
    _check_same_dim(s.n, s2.n)
    return PerceptionSet(a * b for a, b in zip(s.chi, s2.chi))


def char_or(s: PerceptionSet, s2: PerceptionSet) -> PerceptionSet:
    """Union: chi + chi' - chi*chi' componentwise."""
    _check_same_dim(s.n, s2.n)
    return PerceptionSet(a + b - a * b for a, b in zip(s.chi, s2.chi))


def classical_prob(s: PerceptionSet, f: FractionVector) -> float:
    """Probability of the set: sum of the fractions of its members."""
    _check_same_dim(s.n, f.n)
    return math.fsum(c * x for c, x in zip(s.chi, f.f))


def diag_projector(s: PerceptionSet) -> np.ndarray:
    """Diagonal projection matrix whose diagonal is the characteristic vector."""
    return np.diag(np.array(s.chi, dtype=complex))


def classical_density(f: FractionVector) -> np.ndarray:
    """Diagonal density matrix whose diagonal is the fraction vector."""
    return np.diag(np.array(f.f, dtype=complex))


def indicator_matrix(c: ClassicalCycle, t: float) -> np.ndarray:
    """Diagonal matrix with a single 1 marking the state occupied at time t."""
    out = np.zeros((c.n, c.n), dtype=complex)
    state = c.state_at(float(t))
    out[state - 1, state - 1] = 1.0
    return out


def time_average_indicator(c: ClassicalCycle, steps: int) -> np.ndarray:
    """Midpoint Riemann average of the indicator matrix over one period.

    Converges to ``classical_density(dwell_fractions(c))`` with max-entry
    error O(1/steps).
    """
    steps = int(steps)
    if steps < 1:
        raise ValidationError("steps must be >= 1")
    midpoints = (np.arange(steps, dtype=float) + 0.5) * (c.period / steps)
    states = c._states[c._dwell_indices(midpoints)]
    counts = np.bincount(states - 1, minlength=c.n)
    return np.diag(counts / steps).astype(complex)


def dwell_fractions(c: ClassicalCycle) -> FractionVector:
    """Fraction of the period spent in each state, summed over repeat visits."""
    per_state: list[list[float]] = [[] for _ in range(c.n)]
    for state, duration in c.schedule:
        per_state[state - 1].append(duration)
    period = math.fsum(duration for _, duration in c.schedule)
    totals = [math.fsum(durations) / period for durations in per_state]
    return FractionVector(totals)
