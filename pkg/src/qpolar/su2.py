"""Stokes operators, SU(2) polarization rotations, and unpolarized states.

Polarization transformations of a two-mode field are generated by the
Stokes operators built from the mode amplitude operators,

    S1 = aH'aV + aH aV',   S2 = (aH'aV - aH aV') / i,   S3 = aH'aH - aV'aV,

and preserve the total photon number, so they act block by block on the
excitation manifolds.  Everything here works with those (N+1)-dimensional
blocks in the basis ``|n, N-n>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import (
    BlockDiagonalState,
    ManifoldBlock,
    PureAmplitudes,
    TwoModeState,
    UnpolarizedWeights,
    require_valid,
)


@dataclass(frozen=True)
class EulerAngles:
    """Euler angles (phi, theta, psi) of a polarization rotation, radians."""

    phi: float
    theta: float
    psi: float

    def __post_init__(self):
        for name in ("phi", "theta", "psi"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"Euler angle {name} must be finite")


@dataclass(frozen=True)
class StokesBlock:
    """The three Stokes generators restricted to one manifold."""

    n_photons: int
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray


def stokes_block(n_photons: int) -> StokesBlock:
    """Stokes operators on the N-photon manifold in the basis |n, N-n>.

    S3 is diagonal with entries 2n - N; S1 is the real tridiagonal matrix
    with <n+1|S1|n> = sqrt((n+1)(N-n)); S2 is its imaginary counterpart
    with <n+1|S2|n> = -i sqrt((n+1)(N-n)).
    """
    if n_photons < 0:
        raise DomainError("photon number must be non-negative")
    n = np.arange(n_photons)
    t = np.sqrt((n + 1.0) * (n_photons - n))
    s1 = (np.diag(t, 1) + np.diag(t, -1)).astype(complex)
    s2 = np.diag(1j * t, 1) + np.diag(-1j * t, -1)
    s3 = np.diag(2.0 * np.arange(n_photons + 1) - n_photons).astype(complex)
    for m in (s1, s2, s3):
        m.setflags(write=False)
    return StokesBlock(n_photons, s1, s2, s3)


def _expm_hermitian(generator: np.ndarray, factor: float) -> np.ndarray:
    """exp(-i * factor * H) for Hermitian H via eigendecomposition."""
    vals, vecs = np.linalg.eigh(generator)
    return (vecs * np.exp(-1j * factor * vals)) @ vecs.conj().T


def polarization_unitary(n_photons: int, angles: EulerAngles) -> np.ndarray:
    """Manifold block of exp(-i phi S3/2) exp(-i theta S2/2) exp(-i psi S3/2)."""
    blk = stokes_block(n_photons)
    diag3 = np.real(np.diag(blk.s3))
    d_phi = np.exp(-0.5j * angles.phi * diag3)
    d_psi = np.exp(-0.5j * angles.psi * diag3)
    if angles.theta == 0.0:
        # keep zero rotations exact (no eigendecomposition round-off)
        rot = np.eye(n_photons + 1, dtype=complex)
    else:
        rot = _expm_hermitian(blk.s2, 0.5 * angles.theta)
    return (d_phi[:, None] * rot) * d_psi[None, :]


def transform_state(state: TwoModeState, angles: EulerAngles) -> TwoModeState:
    """Apply the polarization rotation manifold by manifold.

    Pure states stay pure (amplitudes are rotated within each manifold);
    block-diagonal states get each block conjugated by its unitary.  Manifold
    weights and block spectra are unchanged.
    """
    require_valid(state)
    if isinstance(state, PureAmplitudes):
        entries = []
        for n_total in state.manifolds:
            u = polarization_unitary(n_total, angles)
            vec = u @ state.manifold_vector(n_total)
            for n, amp in enumerate(vec):
                if amp != 0:
                    entries.append((n_total, n, complex(amp)))
        return PureAmplitudes(tuple(entries))
    blocks = []
    for b in state.blocks:
        u = polarization_unitary(b.n_photons, angles)
        mat = u @ np.asarray(b.matrix) @ u.conj().T
        mat = (mat + mat.conj().T) / 2
        blocks.append(ManifoldBlock(b.n_photons, mat, b.weight))
    return BlockDiagonalState(tuple(blocks), state.discarded_weight)


def unpolarized_state(weights: UnpolarizedWeights) -> BlockDiagonalState:
    """SU(2)-invariant state with blocks (pi_N / (N+1)) * identity."""
    blocks = []
    for n_total, pi in weights.weights:
        if pi <= 0:
            continue
        dim = n_total + 1
        blocks.append(ManifoldBlock(n_total, (pi / dim) * np.eye(dim, dtype=complex), pi))
    return BlockDiagonalState(tuple(blocks))
