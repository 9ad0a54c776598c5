"""Seeded Monte Carlo realization of the random-sampling reading of the rule.

Classical sampling draws times uniformly over one period and records the
occupied state, so each state's frequency estimates its dwell fraction.
Measurement sampling draws outcomes of a projective partition with weights
given by the trace rule. Reports are deterministic for a fixed seed (PCG64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classical import ClassicalCycle, dwell_fractions
from .errors import NotAPartitionError, ValidationError
from .matcore import max_abs
from .quantum import DensityMatrix, Projector, trace_prob

PARTITION_TOL = 1e-9


@dataclass(frozen=True)
class SampleReport:
    """Tally of one sampling run against its trace-rule predictions."""

    outcomes: tuple[str, ...]
    counts: tuple[int, ...]
    total: int
    empirical_freqs: tuple[float, ...]
    expected_probs: tuple[float, ...]
    max_abs_deviation: float
    seed: int

    def __post_init__(self):
        k = len(self.outcomes)
        if not (len(self.counts) == len(self.empirical_freqs) == len(self.expected_probs) == k):
            raise ValidationError("report fields must have one entry per outcome")
        if sum(self.counts) != self.total:
            raise ValidationError("counts must sum to total")

    def to_obj(self) -> dict:
        """JSON-ready dict with a fixed key order."""
        return {
            "outcomes": list(self.outcomes),
            "counts": list(self.counts),
            "total": self.total,
            "empirical_freqs": list(self.empirical_freqs),
            "expected_probs": list(self.expected_probs),
            "max_abs_deviation": self.max_abs_deviation,
            "seed": self.seed,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "SampleReport":
        return cls(
            outcomes=tuple(str(x) for x in obj["outcomes"]),
            counts=tuple(int(x) for x in obj["counts"]),
            total=int(obj["total"]),
            empirical_freqs=tuple(float(x) for x in obj["empirical_freqs"]),
            expected_probs=tuple(float(x) for x in obj["expected_probs"]),
            max_abs_deviation=float(obj["max_abs_deviation"]),
            seed=int(obj["seed"]),
        )


def _build_report(
    outcomes: Sequence[str], counts: np.ndarray, total: int, expected: Sequence[float], seed: int
) -> SampleReport:
    freqs = tuple(float(c) / total for c in counts)
    deviation = max(abs(f - e) for f, e in zip(freqs, expected))
    return SampleReport(
        outcomes=tuple(outcomes),
        counts=tuple(int(c) for c in counts),
        total=total,
        empirical_freqs=freqs,
        expected_probs=tuple(float(e) for e in expected),
        max_abs_deviation=float(deviation),
        seed=seed,
    )


def sample_classical(c: ClassicalCycle, n_samples: int, seed: int) -> SampleReport:
    """Sample times uniform over [0, T) and tally the occupied states."""
    n_samples = int(n_samples)
    if n_samples < 1:
        raise ValidationError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    times = rng.random(n_samples) * c.period
    states = c._states[c._dwell_indices(times)]
    counts = np.bincount(states - 1, minlength=c.n)
    labels = [f"state-{i}" for i in range(1, c.n + 1)]
    return _build_report(labels, counts, n_samples, dwell_fractions(c).f, int(seed))


def sample_measurement(
    partition: Sequence[Projector],
    rho: DensityMatrix,
    n_samples: int,
    seed: int,
    labels: Sequence[str] | None = None,
) -> SampleReport:
    """Draw outcomes of a projective partition with trace-rule weights.

    The projectors must sum to the identity and be pairwise orthogonal
    (both to 1e-9 in max-norm); their trace probabilities are then used as
    inverse-CDF weights. Weight sums off 1 by more than 1e-9 are refused.
    """
    n_samples = int(n_samples)
    if n_samples < 1:
        raise ValidationError("n_samples must be >= 1")
    if not partition:
        raise NotAPartitionError("partition must contain at least one projector")
    dim = rho.dim
    if any(p.dim != dim for p in partition):
        raise NotAPartitionError("all projectors must match the density matrix dimension")
    total_op = sum(p.mat for p in partition)
    if max_abs(total_op - np.eye(dim)) > PARTITION_TOL:
        raise NotAPartitionError("projectors do not sum to the identity within 1e-9")
    for i in range(len(partition)):
        for j in range(i + 1, len(partition)):
            if max_abs(partition[i].mat @ partition[j].mat) > PARTITION_TOL:
                raise NotAPartitionError(f"projectors {i} and {j} are not orthogonal within 1e-9")

    weights = np.array([trace_prob(p, rho) for p in partition])
    weight_sum = math.fsum(weights)
    if abs(weight_sum - 1.0) > PARTITION_TOL:
        raise NotAPartitionError(f"outcome weights sum to {weight_sum!r}, off 1 beyond 1e-9")
    weights = weights / weight_sum

    cdf = np.cumsum(weights)
    cdf[-1] = 1.0
    rng = np.random.default_rng(seed)
    draws = rng.random(n_samples)
    outcomes = np.searchsorted(cdf, draws, side="right")
    counts = np.bincount(outcomes, minlength=len(partition))
    if labels is None:
        labels = [f"outcome-{k}" for k in range(1, len(partition) + 1)]
    elif len(labels) != len(partition):
        raise ValidationError("labels must match the number of projectors")
    return _build_report(list(labels), counts, n_samples, weights, int(seed))


def deviation_check(report: SampleReport, sigma_multiplier: float) -> bool:
    """Whether every outcome sits within its binomial deviation bound.

    The bound per outcome is sigma_multiplier * sqrt(p(1-p)/N) + 1/N, the
    extra 1/N covering the granularity of empirical frequencies.
    """
    if sigma_multiplier <= 0.0:
        raise ValidationError("sigma_multiplier must be > 0")
    n = report.total
    for freq, p in zip(report.empirical_freqs, report.expected_probs):
        bound = sigma_multiplier * math.sqrt(p * (1.0 - p) / n) + 1.0 / n
        if abs(freq - p) > bound:
            return False
    return True
