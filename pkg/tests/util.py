"""Shared random-state generators for the test suite."""

from __future__ import annotations

import numpy as np

from qpolar import (
    BlockDiagonalState,
    EulerAngles,
    ManifoldBlock,
    PureAmplitudes,
    polarization_unitary,
)


def random_psd_matrix(rng, dim: int, rank: int | None = None, weight: float = 1.0):
    """Random positive semidefinite matrix with the given trace and rank."""
    r = dim if rank is None else rank
    a = rng.normal(size=(dim, r)) + 1j * rng.normal(size=(dim, r))
    m = a @ a.conj().T
    return m * (weight / np.trace(m).real)


def random_weights(rng, k: int, floor: float = 0.05) -> np.ndarray:
    w = rng.dirichlet(np.full(k, 2.0))
    w = w + floor
    return w / w.sum()


def random_block_state(
    rng, max_n: int = 5, max_blocks: int = 4, full_rank: bool = False
) -> BlockDiagonalState:
    k = int(rng.integers(1, max_blocks + 1))
    ns = sorted(rng.choice(max_n + 1, size=k, replace=False).tolist())
    weights = random_weights(rng, k)
    blocks = []
    for n, w in zip(ns, weights):
        dim = n + 1
        rank = dim if full_rank else int(rng.integers(1, dim + 1))
        blocks.append(ManifoldBlock(n, random_psd_matrix(rng, dim, rank, w), float(w)))
    return BlockDiagonalState(tuple(blocks))


def random_pure_state(rng, manifolds=(1, 2, 3)) -> PureAmplitudes:
    entries = []
    for n_total in manifolds:
        for n in range(n_total + 1):
            entries.append(
                (n_total, n, complex(rng.normal(), rng.normal()))
            )
    norm = np.sqrt(sum(abs(a) ** 2 for _, _, a in entries))
    return PureAmplitudes(tuple((nt, n, a / norm) for nt, n, a in entries))


def random_angles(rng) -> EulerAngles:
    phi, theta, psi = rng.uniform(-2 * np.pi, 2 * np.pi, size=3)
    return EulerAngles(float(phi), float(theta), float(psi))


def spectrum_with_tv(rng, dim: int, min_tv: float) -> np.ndarray:
    """Probability vector at total-variation distance >= min_tv from uniform."""
    while True:
        lam = rng.dirichlet(np.ones(dim))
        if 0.5 * np.abs(lam - 1.0 / dim).sum() >= min_tv:
            return lam


def deviated_block_state(rng, min_tv: float = 0.1) -> BlockDiagonalState:
    """Random state whose manifold spectra all sit >= min_tv from uniform.

    Uses manifolds N >= 1 only (the vacuum spectrum is always uniform) and
    applies a random polarization rotation so the blocks are not diagonal.
    """
    k = int(rng.integers(1, 4))
    ns = sorted(rng.choice(np.arange(1, 6), size=k, replace=False).tolist())
    weights = random_weights(rng, k, floor=0.2)
    angles = random_angles(rng)
    blocks = []
    for n, w in zip(ns, weights):
        dim = n + 1
        lam = spectrum_with_tv(rng, dim, min_tv)
        u = polarization_unitary(n, angles)
        mat = (u * (w * lam)[None, :]) @ u.conj().T
        mat = (mat + mat.conj().T) / 2
        blocks.append(ManifoldBlock(n, mat, float(w)))
    return BlockDiagonalState(tuple(blocks))


def random_density_matrix(rng, dim: int, rank: int | None = None) -> np.ndarray:
    return random_psd_matrix(rng, dim, rank, 1.0)
