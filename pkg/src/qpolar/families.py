"""Closed-form fast paths for two-manifold state families.

Two worked families carry the whole phenomenology of the Chernoff measure:

* a pure superposition of an N1-photon and an N2-photon state with
  probability p on the lower manifold, whose Chernoff degree exhibits a
  plateau N1/(N1+1) for p >= 1/(N1+1);
* a Fock-diagonal mixture of an N1=1 and an N2=2 manifold block with
  diagonal entries (alpha, 1-alpha) and (beta, gamma, 1-beta-gamma).

Both reduce every overlap to two scalar terms.  The functions here provide
those scalar forms directly and reuse the spectral engine for the
minimization over s, so family results and the general engine agree to
round-off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DomainError
from .measures import (
    BuresResult,
    ChernoffResult,
    bures_from_spectra,
    chernoff_from_spectra,
)
from .spectral import SpectralData, _check_s, manifold_spectrum
from .states import (
    NORM_TOL,
    BlockDiagonalState,
    ManifoldBlock,
    PureAmplitudes,
    UnpolarizedWeights,
)


def _pow0(x: float, e: float) -> float:
    """x**e with the 0^0 = 0 convention used throughout."""
    return 0.0 if x <= 0.0 else x ** e


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name}={value} outside [0, 1]")


@dataclass(frozen=True)
class SuperpositionFamily:
    """sqrt(p)|N1-photon> + sqrt(1-p)|N2-photon>, N1 < N2."""

    n1: int
    n2: int
    p: float

    def __post_init__(self):
        if not 0 <= self.n1 < self.n2:
            raise DomainError(f"need 0 <= N1 < N2, got N1={self.n1}, N2={self.n2}")
        _check_unit("p", self.p)


@dataclass(frozen=True)
class MixtureFamily:
    """p * diag(alpha, 1-alpha)/1-photon + (1-p) * diag(beta, gamma, rest)/2-photon."""

    p: float
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        _check_unit("p", self.p)
        _check_unit("alpha", self.alpha)
        if self.beta < 0 or self.gamma < 0 or self.beta + self.gamma > 1:
            raise DomainError(
                f"need beta, gamma >= 0 and beta+gamma <= 1, got {self.beta}, {self.gamma}"
            )


# ---------------------------------------------------------------------------
# Superposition of two pure N-photon states


def superposition_renyi(fam: SuperpositionFamily, s: float, pi1: float) -> float:
    """Renyi overlap Q_s(p, pi1) of the pure family against unpolarized weights.

    Q_s = p^s (pi1/(N1+1))^(1-s) + (1-p)^s ((1-pi1)/(N2+1))^(1-s).
    """
    _check_s(s)
    _check_unit("pi1", pi1)
    return _pow0(fam.p, s) * _pow0(pi1 / (fam.n1 + 1), 1 - s) + _pow0(
        1 - fam.p, s
    ) * _pow0((1 - pi1) / (fam.n2 + 1), 1 - s)


def superposition_spectra(fam: SuperpositionFamily) -> SpectralData:
    """Spectral description: rank-1 manifolds with weights p and 1-p."""
    manifolds = []
    for n_total, w in ((fam.n1, fam.p), (fam.n2, 1.0 - fam.p)):
        if w <= 0.0:
            continue
        vals = np.zeros(n_total + 1)
        vals[0] = 1.0
        manifolds.append(manifold_spectrum(n_total, w, vals))
    return SpectralData(tuple(manifolds))


def _single_manifold_pure(n_total: int) -> ChernoffResult:
    # An N-photon pure state: the minimum sits at s = 0 with overlap 1/(N+1).
    overlap = 1.0 / (n_total + 1)
    return ChernoffResult(
        0.0, overlap, 1.0 - overlap, UnpolarizedWeights({n_total: 1.0}), True
    )


def superposition_chernoff(fam: SuperpositionFamily) -> ChernoffResult:
    """Chernoff degree of the pure family, with its plateau handled exactly.

    For p >= 1/(N1+1) the minimum over s is at s = 0 and the degree is the
    constant N1/(N1+1); below the threshold an interior saddle s in (0, 1)
    exists and the degree is found numerically.
    """
    if fam.p == 0.0:
        return _single_manifold_pure(fam.n2)
    if fam.p == 1.0:
        return _single_manifold_pure(fam.n1)
    if fam.p >= 1.0 / (fam.n1 + 1):
        overlap = 1.0 / (fam.n1 + 1)
        return ChernoffResult(
            0.0, overlap, 1.0 - overlap, UnpolarizedWeights({fam.n1: 1.0}), True
        )
    return chernoff_from_spectra(superposition_spectra(fam))


def superposition_bures(fam: SuperpositionFamily) -> float:
    """Bures degree 1 - sqrt(p/(N1+1) + (1-p)/(N2+1)); strictly decreasing in p."""
    return 1.0 - math.sqrt(fam.p / (fam.n1 + 1) + (1.0 - fam.p) / (fam.n2 + 1))


def superposition_state(fam: SuperpositionFamily) -> PureAmplitudes:
    """Concrete representative using |N, 0> vectors; any choice gives the
    same degrees because they depend only on the manifold spectra."""
    entries = []
    if fam.p > 0:
        entries.append((fam.n1, fam.n1, complex(math.sqrt(fam.p))))
    if fam.p < 1:
        entries.append((fam.n2, fam.n2, complex(math.sqrt(1.0 - fam.p))))
    return PureAmplitudes(tuple(entries))


def superposition_stationarity_residual(fam: SuperpositionFamily, s: float) -> float:
    """Residual of the transcendental stationarity condition at s.

    Vanishes at an interior minimizer of the two-term overlap; used as a
    diagnostic, not as the solver.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"interior s required, got {s}")
    a, b = fam.n1 + 1.0, fam.n2 + 1.0
    t1 = fam.p * a ** (1.0 - 1.0 / s)
    t2 = (1.0 - fam.p) * b ** (1.0 - 1.0 / s)
    q = (t1 + t2) ** s
    return t1 * math.log(a * q) + t2 * math.log(b * q)


# ---------------------------------------------------------------------------
# Mixture of two Fock-diagonal manifold blocks (N1 = 1, N2 = 2)


def _mixture_spectra_values(fam: MixtureFamily) -> tuple[np.ndarray, np.ndarray]:
    one = np.array([fam.alpha, 1.0 - fam.alpha])
    two = np.array([fam.beta, fam.gamma, 1.0 - fam.beta - fam.gamma])
    return one, two


def mixture_renyi(fam: MixtureFamily, s: float, pi1: float) -> float:
    """Renyi overlap Q_s(p, pi1) of the Fock-diagonal mixture.

    (pi1/2)^(1-s) p^s [a^s + (1-a)^s]
      + ((1-pi1)/3)^(1-s) (1-p)^s [b^s + g^s + (1-b-g)^s].
    """
    _check_s(s)
    _check_unit("pi1", pi1)
    one, two = _mixture_spectra_values(fam)
    xi1 = sum(_pow0(v, s) for v in one)
    xi2 = sum(_pow0(v, s) for v in two)
    return (
        _pow0(pi1 / 2.0, 1 - s) * _pow0(fam.p, s) * xi1
        + _pow0((1.0 - pi1) / 3.0, 1 - s) * _pow0(1.0 - fam.p, s) * xi2
    )


def mixture_spectra(fam: MixtureFamily) -> SpectralData:
    one, two = _mixture_spectra_values(fam)
    manifolds = []
    if fam.p > 0:
        manifolds.append(manifold_spectrum(1, fam.p, one))
    if fam.p < 1:
        manifolds.append(manifold_spectrum(2, 1.0 - fam.p, two))
    return SpectralData(tuple(manifolds))


def mixture_degrees(fam: MixtureFamily) -> tuple[ChernoffResult, BuresResult]:
    """Chernoff and Bures degrees of the mixture family."""
    spec = mixture_spectra(fam)
    return chernoff_from_spectra(spec), bures_from_spectra(spec)


def mixture_state(fam: MixtureFamily) -> BlockDiagonalState:
    """The mixture as an explicit block-diagonal state."""
    one, two = _mixture_spectra_values(fam)
    blocks = []
    if fam.p > 0:
        blocks.append(ManifoldBlock(1, np.diag(fam.p * one).astype(complex), fam.p))
    if fam.p < 1:
        blocks.append(
            ManifoldBlock(2, np.diag((1.0 - fam.p) * two).astype(complex), 1.0 - fam.p)
        )
    return BlockDiagonalState(tuple(blocks))


# ---------------------------------------------------------------------------
# Pure states with an arbitrary photon-number distribution


def pure_state_degrees(distribution: Mapping[int, float]) -> tuple[float, float]:
    """Degrees of any pure state with the given photon-number distribution.

    For pure states both measures depend only on the distribution:
    P_C = 1 - min_s [sum_N p_N (N+1)^(1-1/s)]^s  and
    P_B = 1 - sqrt(sum_N p_N/(N+1)).
    """
    items = sorted((int(n), float(w)) for n, w in distribution.items())
    if any(n < 0 for n, _ in items):
        raise DomainError("photon numbers must be non-negative")
    if any(w < 0 for _, w in items):
        raise DomainError("probabilities must be non-negative")
    total = sum(w for _, w in items)
    if abs(total - 1.0) > NORM_TOL:
        raise DomainError(f"distribution sums to {total}, not 1")
    manifolds = []
    for n_total, w in items:
        if w <= 0.0:
            continue
        vals = np.zeros(n_total + 1)
        vals[0] = 1.0
        manifolds.append(manifold_spectrum(n_total, w, vals))
    if not manifolds:
        raise DomainError("distribution has no support")
    chern = chernoff_from_spectra(SpectralData(tuple(manifolds)))
    bures = 1.0 - math.sqrt(sum(w / (n + 1) for n, w in items if w > 0))
    return chern.degree, bures
