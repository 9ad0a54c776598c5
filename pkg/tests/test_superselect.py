"""Time evolution, energy blocks, dephasing, and superselection compliance."""

from __future__ import annotations

import numpy as np
import pytest

from helpers import (
    averaged_evolution,
    random_density,
    random_hamiltonian,
    random_hermitian,
)
from traceprob import (
    DensityMatrix,
    DimensionMismatchError,
    Hamiltonian,
    NotHermitianError,
    NotRealError,
    Projector,
    RealityMode,
    ValidationError,
    default_cluster_tol,
    dephase,
    energy_blocks,
    evolve,
    is_superselection_compliant,
    max_abs,
    trace,
    trace_prob,
)

PLUS_STATE = np.full((2, 2), 0.5)


def _min_cluster_gap(h: Hamiltonian) -> float:
    energies = energy_blocks(h).energies
    if len(energies) < 2:
        return 1.0
    return float(np.min(np.diff(energies)))


# --- Hamiltonian ---


def test_hamiltonian_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        Hamiltonian(np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_hamiltonian_real_mode():
    Hamiltonian(np.array([[0.0, 1.0], [1.0, 0.0]]), mode=RealityMode.REAL)
    with pytest.raises(NotRealError):
        Hamiltonian(np.array([[0.0, -1j], [1j, 0.0]]), mode=RealityMode.REAL)


def test_hamiltonian_caches_ascending_energies():
    h = Hamiltonian(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(h.energies, [1.0, 2.0, 3.0], atol=1e-14)
    with pytest.raises(AttributeError):
        h.mat = np.eye(3)


# --- evolve ---


def test_evolve_at_time_zero():
    rng = np.random.default_rng(51)
    rho = random_density(rng, 4)
    h = random_hamiltonian(rng, 4)
    assert max_abs(evolve(rho, h, 0.0).mat - rho.mat) <= 1e-12


def test_evolve_zero_hamiltonian():
    rng = np.random.default_rng(52)
    rho = random_density(rng, 3)
    h = Hamiltonian(np.zeros((3, 3)))
    assert max_abs(evolve(rho, h, 17.3).mat - rho.mat) <= 1e-12


def test_evolve_phase_example():
    # Off-diagonal picks up e^{-i pi} = -1 between energies 0 and 1.
    h = Hamiltonian(np.diag([0.0, 1.0]))
    rho = DensityMatrix(PLUS_STATE)
    expected = 0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]])
    assert max_abs(evolve(rho, h, np.pi).mat - expected) <= 1e-12


def test_evolve_dim_mismatch():
    with pytest.raises(DimensionMismatchError):
        evolve(DensityMatrix(PLUS_STATE), Hamiltonian(np.zeros((3, 3))), 1.0)


# --- energy blocks ---


def test_energy_blocks_degenerate_pair():
    blocks = energy_blocks(Hamiltonian(np.diag([0.0, 0.0, 5.0])))
    assert blocks.clusters == ((0, 1), (2,))
    assert blocks.count == 2
    np.testing.assert_allclose(blocks.projectors[0], np.diag([1.0, 1.0, 0.0]), atol=1e-12)


def test_energy_blocks_distinct_spectrum():
    blocks = energy_blocks(Hamiltonian(np.diag([1.0, 2.0, 4.0, 8.0])))
    assert blocks.count == 4
    assert all(len(c) == 1 for c in blocks.clusters)


def test_energy_blocks_zero_hamiltonian():
    blocks = energy_blocks(Hamiltonian(np.zeros((3, 3))))
    assert blocks.count == 1
    np.testing.assert_allclose(blocks.projectors[0], np.eye(3), atol=1e-12)


def test_energy_blocks_resolution_of_identity():
    rng = np.random.default_rng(53)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        h = random_hamiltonian(rng, n)
        blocks = energy_blocks(h)
        total = sum(blocks.projectors)
        assert max_abs(total - np.eye(n)) <= 1e-9
        for i in range(blocks.count):
            for j in range(i + 1, blocks.count):
                assert max_abs(blocks.projectors[i] @ blocks.projectors[j]) <= 1e-9


def test_energy_blocks_cluster_gaps_exceed_tol():
    h = Hamiltonian(np.diag([0.0, 1e-12, 1.0, 1.0 + 1e-12, 2.0]))
    tol = default_cluster_tol(h)
    blocks = energy_blocks(h, tol)
    assert blocks.count == 3
    gaps = np.diff(blocks.energies)
    assert np.all(gaps > tol)


def test_energy_blocks_rejects_bad_tol():
    with pytest.raises(ValidationError):
        energy_blocks(Hamiltonian(np.eye(2)), 0.0)


def test_default_cluster_tol_scales_with_spectrum():
    assert default_cluster_tol(Hamiltonian(np.diag([0.0, 5.0]))) == 5e-8
    assert default_cluster_tol(Hamiltonian(np.diag([0.0, 0.1]))) == 1e-8


# --- dephase ---


def test_dephase_kills_cross_energy_coherence():
    h = Hamiltonian(np.diag([0.0, 1.0]))
    result = dephase(DensityMatrix(PLUS_STATE), h)
    np.testing.assert_allclose(result.mat, np.diag([0.5, 0.5]), atol=1e-15)


def test_dephase_zero_hamiltonian_is_identity_map():
    rng = np.random.default_rng(54)
    rho = random_density(rng, 4)
    result = dephase(rho, Hamiltonian(np.zeros((4, 4))))
    assert max_abs(result.mat - rho.mat) <= 1e-12


def test_dephase_properties_sweep():
    rng = np.random.default_rng(55)
    for _ in range(15):
        n = int(rng.integers(2, 7))
        rho = random_density(rng, n)
        h = random_hamiltonian(rng, n)
        bar = dephase(rho, h)
        # idempotent
        assert max_abs(dephase(bar, h).mat - bar.mat) <= 1e-10
        # trace preserved
        assert abs(trace(bar.mat) - trace(rho.mat)) <= 1e-12
        # positive
        assert float(np.min(np.linalg.eigvalsh(bar.mat))) >= -1e-10
        # stationary under further evolution
        for t in rng.uniform(0.0, 100.0, size=20):
            assert max_abs(evolve(bar, h, t).mat - bar.mat) <= 1e-9


def test_dephase_diagonal_in_nondegenerate_eigenbasis():
    rng = np.random.default_rng(56)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        rho = random_density(rng, n)
        h = random_hamiltonian(rng, n)  # continuous spectrum: a.s. nondegenerate
        bar = dephase(rho, h)
        v = h.eig.eigenvectors
        in_basis = v.conj().T @ bar.mat @ v
        off = in_basis - np.diag(np.diagonal(in_basis))
        assert max_abs(off) <= 1e-10


def test_dephase_matches_literal_long_time_average():
    rng = np.random.default_rng(57)
    for _ in range(3):
        rho = random_density(rng, 6)
        h = random_hamiltonian(rng, 6)
        window = 1e3 / _min_cluster_gap(h)
        times = rng.uniform(0.0, window, size=2000)
        literal = np.mean([evolve(rho, h, t).mat for t in times], axis=0)
        assert max_abs(literal - dephase(rho, h).mat) <= 5e-3
        # the vectorized average used by the acceptance suite is the same sum
        assert max_abs(averaged_evolution(rho, h, times) - literal) <= 1e-12


def test_dephase_dim_mismatch():
    with pytest.raises(DimensionMismatchError):
        dephase(DensityMatrix(PLUS_STATE), Hamiltonian(np.zeros((3, 3))))


# --- compliance ---


def test_compliance_identity_always():
    rng = np.random.default_rng(58)
    h = random_hamiltonian(rng, 5)
    assert is_superselection_compliant(Projector(np.eye(5)), h)


def test_compliance_rejects_cross_energy_projector():
    h = Hamiltonian(np.diag([0.0, 1.0]))
    assert not is_superselection_compliant(Projector(PLUS_STATE), h)


def test_compliance_of_spectral_projectors():
    rng = np.random.default_rng(59)
    h = Hamiltonian(random_hermitian(rng, 5))
    for pi in energy_blocks(h).projectors:
        assert is_superselection_compliant(Projector(pi), h)


def test_compliant_probabilities_are_time_independent():
    rng = np.random.default_rng(60)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        rho = random_density(rng, n)
        h = random_hamiltonian(rng, n)
        blocks = energy_blocks(h)
        keep = rng.integers(0, 2, size=blocks.count)
        if not keep.any():
            keep[0] = 1
        p = Projector(sum(pi for pi, k in zip(blocks.projectors, keep) if k))
        assert is_superselection_compliant(p, h)
        baseline = trace_prob(p, dephase(rho, h))
        for t in rng.uniform(0.0, 50.0, size=5):
            assert abs(trace_prob(p, evolve(rho, h, t)) - baseline) <= 1e-9
