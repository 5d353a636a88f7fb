"""Per-manifold eigenvalue spectra and the power sums they feed.

Every polarization measure downstream depends on the state only through the
manifold weights p_N and the eigenvalues of the normalized blocks
rho^(N)/p_N.  This module extracts those spectra once and evaluates the
power sums xi_N(s) = sum_n lambda_n^s (positive eigenvalues only, so
xi_N(0) equals the manifold rank and xi_N(1) = 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidStateError
from .states import NORM_TOL, PSD_TOL, BlockDiagonalState, require_valid

RANK_TOL = 1e-10  # relative to the largest eigenvalue of a block


def _check_s(s: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s={s} outside [0, 1]")


def clamp_spectrum(values: np.ndarray) -> tuple[np.ndarray, int]:
    """Sort descending, zero out sub-rank noise, and count positive entries.

    Entries below ``RANK_TOL`` relative to the largest one are set to exactly
    zero so that noise-level eigenvalues never inflate the rank or leak into
    small-s power sums.
    """
    vals = np.array(values, dtype=float)
    vals = np.clip(vals, 0.0, 1.0)
    top = vals.max() if vals.size else 0.0
    vals[vals < RANK_TOL * top] = 0.0
    vals[::-1].sort()
    rank = int(np.count_nonzero(vals))
    return vals, rank


@dataclass(frozen=True)
class ManifoldSpectrum:
    """Eigenvalues (descending, unit sum) of one normalized manifold block."""

    n_photons: int
    weight: float
    eigenvalues: np.ndarray
    rank: int

    @property
    def dim(self) -> int:
        return self.n_photons + 1

    def xi(self, s: float) -> float:
        """Power sum of the positive eigenvalues, with the 0^0 = 0 convention."""
        _check_s(s)
        if s == 0.0:
            return float(self.rank)
        return float(np.sum(self.eigenvalues[: self.rank] ** s))


def manifold_spectrum(n_photons: int, weight: float, values) -> ManifoldSpectrum:
    """Build a spectrum record from raw eigenvalues, clamping and ranking."""
    vals = np.asarray(values, dtype=float)
    if vals.shape != (n_photons + 1,):
        raise InvalidStateError(
            f"manifold N={n_photons} needs {n_photons + 1} eigenvalues, got {vals.shape}"
        )
    if vals.min() < -PSD_TOL:
        raise InvalidStateError(
            f"block N={n_photons}: negative eigenvalue {vals.min():.6e}"
        )
    if vals.max() > 1 + PSD_TOL:
        raise InvalidStateError(
            f"block N={n_photons}: eigenvalue above one: {vals.max():.6e}"
        )
    if abs(vals.sum() - 1.0) > NORM_TOL:
        raise InvalidStateError(
            f"block N={n_photons}: eigenvalues sum to {vals.sum()}, not 1"
        )
    clamped, rank = clamp_spectrum(vals)
    clamped.setflags(write=False)
    return ManifoldSpectrum(n_photons, float(weight), clamped, rank)


@dataclass(frozen=True)
class SpectralData:
    """Spectra of all stored manifolds, ordered by photon number."""

    manifolds: tuple[ManifoldSpectrum, ...]

    def __post_init__(self):
        ns = [m.n_photons for m in self.manifolds]
        if any(x >= y for x, y in zip(ns, ns[1:])):
            raise InvalidStateError("manifold indices must be strictly increasing")

    def manifold(self, n_photons: int) -> ManifoldSpectrum:
        for m in self.manifolds:
            if m.n_photons == n_photons:
                return m
        raise KeyError(f"no spectrum for N={n_photons}")

    def xi(self, n_photons: int, s: float) -> float:
        return self.manifold(n_photons).xi(s)


def spectra(state: BlockDiagonalState) -> SpectralData:
    """Eigen-decompose every normalized block, in deterministic order."""
    if not isinstance(state, BlockDiagonalState):
        raise InvalidStateError("spectra expects a block-diagonal state")
    require_valid(state)
    out = []
    for b in state.blocks:
        mat = b.normalized()
        vals = np.linalg.eigvalsh((mat + mat.conj().T) / 2)
        out.append(manifold_spectrum(b.n_photons, b.weight, vals))
    return SpectralData(tuple(out))
