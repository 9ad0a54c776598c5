"""Hamiltonian time evolution, time-average dephasing, and energy superselection.

With no access to the time, only the infinite-time average of the evolving
density matrix is relevant; the off-diagonal terms between distinct energies
carry oscillatory phases that wash out, so the average is block-diagonal
across energy sectors. The average is exact algebra, computed in closed form
as the sum of the spectral-projector compressions of rho.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ValidationError
from .matcore import DEFAULT_TOL, EigenDecomposition, as_matrix, hermitian_eig, max_abs
from .quantum import DensityMatrix, Projector, RealityMode, enforce_reality

COMPLIANCE_TOL = 1e-9


class Hamiltonian:
    """Hermitian generator of time evolution (hbar = 1); eigendecomposition cached."""

    __slots__ = ("mat", "eig")

    def __init__(self, mat, *, mode: RealityMode = RealityMode.COMPLEX, tol: float = DEFAULT_TOL):
        m = as_matrix(mat)
        enforce_reality(mode, m)
        eig = hermitian_eig(m, tol=tol)
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "eig", eig)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def energies(self) -> np.ndarray:
        """Ascending eigenvalues."""
        return self.eig.eigenvalues

    def __setattr__(self, name, value):
        raise AttributeError("Hamiltonian is immutable")

    def __repr__(self) -> str:
        return f"Hamiltonian(dim={self.dim})"


@dataclass(frozen=True)
class EnergyBlocks:
    """Partition of eigen-indices into equal-energy clusters with spectral projectors.

    The projectors sum to the identity and are mutually orthogonal; adjacent
    clusters are separated by an energy gap larger than the clustering
    tolerance used to build them.
    """

    clusters: tuple[tuple[int, ...], ...]
    energies: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        for pi in self.projectors:
            pi.setflags(write=False)

    @property
    def count(self) -> int:
        return len(self.clusters)


def default_cluster_tol(h: Hamiltonian) -> float:
    """Default near-degeneracy tolerance: 1e-8 * max(1, |E|_max)."""
    return 1e-8 * max(1.0, float(np.max(np.abs(h.energies))))


def energy_blocks(h: Hamiltonian, cluster_tol: float | None = None) -> EnergyBlocks:
    """Greedy clustering of the ascending spectrum into equal-energy sectors.

    Consecutive eigenvalues join one cluster iff their gap is <= cluster_tol;
    each cluster's spectral projector is the sum of its eigenvector dyads.
    """
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(h)
    if cluster_tol <= 0.0:
        raise ValidationError("cluster_tol must be > 0")
    values = h.eig.eigenvalues
    vectors = h.eig.eigenvectors
    clusters: list[list[int]] = [[0]]
    for j in range(1, len(values)):
        if values[j] - values[j - 1] <= cluster_tol:
            clusters[-1].append(j)
        else:
            clusters.append([j])
    projectors = []
    energies = []
    for cluster in clusters:
        block = vectors[:, cluster]
        projectors.append(block @ block.conj().T)
        energies.append(float(np.mean(values[cluster])))
    return EnergyBlocks(
        clusters=tuple(tuple(c) for c in clusters),
        energies=tuple(energies),
        projectors=tuple(projectors),
    )


def evolve(rho: DensityMatrix, h: Hamiltonian, t: float) -> DensityMatrix:
    """Conjugate rho by U(t) = V diag(exp(-i E t)) V^dagger."""
    if rho.dim != h.dim:
        raise DimensionMismatchError(f"density dim {rho.dim} vs hamiltonian dim {h.dim}")
    v = h.eig.eigenvectors
    phases = np.exp(-1j * h.eig.eigenvalues * float(t))
    u = (v * phases[np.newaxis, :]) @ v.conj().T
    return DensityMatrix(u @ rho.mat @ u.conj().T)


def dephase(rho: DensityMatrix, h: Hamiltonian, cluster_tol: float | None = None) -> DensityMatrix:
    """Infinite-time average of the evolving state: sum of Pi_k rho Pi_k.

    The result is block-diagonal across the energy sectors and has the same
    trace as rho.
    """
    if rho.dim != h.dim:
        raise DimensionMismatchError(f"density dim {rho.dim} vs hamiltonian dim {h.dim}")
    blocks = energy_blocks(h, cluster_tol)
    out = np.zeros_like(rho.mat)
    for pi in blocks.projectors:
        out = out + pi @ rho.mat @ pi
    return DensityMatrix(out)


def is_superselection_compliant(
    p: Projector, h: Hamiltonian, cluster_tol: float | None = None, tol: float = COMPLIANCE_TOL
) -> bool:
    """Whether ``p`` is block-diagonal in the energy representation.

    Compliant projectors give probabilities that do not depend on the
    unperceived time: tr(p, evolve(rho, h, t)) is constant in t.
    """
    if p.dim != h.dim:
        raise DimensionMismatchError(f"projector dim {p.dim} vs hamiltonian dim {h.dim}")
    blocks = energy_blocks(h, cluster_tol)
    compressed = np.zeros_like(p.mat)
    for pi in blocks.projectors:
        compressed = compressed + pi @ p.mat @ pi
    return max_abs(compressed - p.mat) <= tol
