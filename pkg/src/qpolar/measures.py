"""Distance-type polarization measures built on the quantum Chernoff bound.

The degree of polarization of a two-mode state is one minus the maximal
Chernoff overlap between its block-diagonal part and the set of unpolarized
states.  Because both operators commute, the Renyi overlap against an
unpolarized state with weights pi_N collapses to the scalar sum

    Q_s = sum_N  p_N^s  xi_N(s)  (pi_N / (N+1))^(1-s),

which is maximized in closed form over the weights and then minimized over
s in [0, 1].  The products involve exponents 1/s, so everything is
evaluated in the log domain; the s -> 0 limit is handled analytically via
the manifold ranks.  The Bures degree is the s = 1/2 cross-section of the
same construction.

Dense-matrix routines for arbitrary density matrices (general Renyi and
Chernoff overlaps, single-copy discrimination error) double as independent
oracles for the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatchError, DomainError, InvalidStateError
from .spectral import SpectralData, _check_s, spectra
from .states import (
    HERMITICITY_TOL,
    NORM_TOL,
    PSD_TOL,
    TwoModeState,
    UnpolarizedWeights,
    block_diagonalize,
)

S_SCAN_POINTS = 201     # uniform seed grid on [0, 1] for the s-minimization
BRACKET_TOL = 1e-10     # golden-section stops below this bracket width
DENSE_EIG_TOL = 1e-12   # relative cut separating eigh round-off from support
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ChernoffResult:
    """Saddle-point data of the Chernoff degree of polarization.

    ``boundary_case`` is set when the minimum over s sits at s = 0, where
    the closest unpolarized state concentrates on a single manifold.
    """

    s_opt: float
    overlap: float
    degree: float
    optimal_weights: UnpolarizedWeights
    boundary_case: bool


@dataclass(frozen=True)
class BuresResult:
    """Bures degree of polarization with the maximal fidelity behind it."""

    degree: float
    fidelity: float
    optimal_weights: UnpolarizedWeights


# ---------------------------------------------------------------------------
# Renyi overlap against unpolarized states and its optimizers


def renyi_overlap_unpolarized(
    spectral_data: SpectralData, weights: UnpolarizedWeights, s: float
) -> float:
    """Q_s between the spectrally described state and the unpolarized state.

    Manifolds with zero probability on either side never contribute (the
    0^0 = 0 convention at the endpoints).
    """
    _check_s(s)
    total = 0.0
    for m in spectral_data.manifolds:
        pi = weights.get(m.n_photons)
        if pi <= 0.0 or m.weight <= 0.0:
            continue
        total += m.weight ** s * m.xi(s) * (pi / m.dim) ** (1.0 - s)
    return total


def _log_terms(spectral_data: SpectralData, s: float) -> np.ndarray:
    """log of p_N (N+1) [xi_N(s)/(N+1)]^(1/s) for every stored manifold."""
    terms = []
    for m in spectral_data.manifolds:
        log_xi = math.log(m.xi(s))
        log_dim = math.log(m.dim)
        terms.append(math.log(m.weight) + log_dim + (log_xi - log_dim) / s)
    return np.asarray(terms)


def _logsumexp(values: np.ndarray) -> float:
    top = np.max(values)
    return float(top + np.log(np.sum(np.exp(values - top))))


def optimal_weights(spectral_data: SpectralData, s: float) -> UnpolarizedWeights:
    """Weights of the closest unpolarized state at fixed s > 0.

    pi_N is proportional to p_N xi_N(s)^(1/s) (N+1)^(1-1/s), normalized in
    the log domain.
    """
    if not 0.0 < s <= 1.0:
        raise DomainError(
            f"s={s} outside (0, 1]; use optimal_weights_at_zero for s = 0"
        )
    logs = _log_terms(spectral_data, s)
    pis = np.exp(logs - _logsumexp(logs))
    pis /= pis.sum()
    return UnpolarizedWeights(
        {m.n_photons: float(pi) for m, pi in zip(spectral_data.manifolds, pis)}
    )


def optimal_weights_at_zero(spectral_data: SpectralData) -> tuple[UnpolarizedWeights, float]:
    """s -> 0 limit: all weight on the manifold maximizing rank/(N+1).

    Returns the delta weights and the limiting overlap value; ties go to the
    smallest photon number.
    """
    ratios = [m.rank / m.dim for m in spectral_data.manifolds]
    best = int(np.argmax(ratios))
    chosen = spectral_data.manifolds[best]
    return UnpolarizedWeights({chosen.n_photons: 1.0}), float(ratios[best])


def max_overlap(spectral_data: SpectralData, s: float) -> float:
    """Renyi overlap against the closest unpolarized state at fixed s.

    Closed form [sum_N p_N (N+1) (xi_N(s)/(N+1))^(1/s)]^s for s > 0,
    extended continuously to max_N rank_N/(N+1) at s = 0.
    """
    _check_s(s)
    if s == 0.0:
        return optimal_weights_at_zero(spectral_data)[1]
    return math.exp(s * _logsumexp(_log_terms(spectral_data, s)))


def _max_overlap_grid(spectral_data: SpectralData, s_values: np.ndarray) -> np.ndarray:
    """Vectorized max_overlap over a grid of strictly positive s values."""
    n_s = s_values.size
    logs = np.empty((len(spectral_data.manifolds), n_s))
    for i, m in enumerate(spectral_data.manifolds):
        pos = m.eigenvalues[: m.rank]
        xi = np.sum(pos[:, None] ** s_values[None, :], axis=0)
        log_dim = math.log(m.dim)
        logs[i] = math.log(m.weight) + log_dim + (np.log(xi) - log_dim) / s_values
    top = logs.max(axis=0)
    lse = top + np.log(np.sum(np.exp(logs - top[None, :]), axis=0))
    return np.exp(s_values * lse)


def _golden_section(fn, a: float, b: float, seed: tuple[float, float]):
    """Golden-section refinement on [a, b], tracking the best point seen."""
    best_s, best_f = seed
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > BRACKET_TOL:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
        for s_val, f_val in ((c, fc), (d, fd)):
            if f_val < best_f:
                best_s, best_f = s_val, f_val
    return best_s, best_f


def _minimize_overlap(spectral_data: SpectralData) -> tuple[float, float, bool]:
    """Scan-then-refine minimization of max_overlap over s in [0, 1].

    The s = 0 endpoint is evaluated analytically and must compete with the
    interior candidates, because the objective can be monotone (plateau
    regime) and the limit is not smooth.
    """
    grid = np.linspace(0.0, 1.0, S_SCAN_POINTS)
    values = np.empty(S_SCAN_POINTS)
    endpoint = max_overlap(spectral_data, 0.0)
    values[0] = endpoint
    values[1:] = _max_overlap_grid(spectral_data, grid[1:])
    k = int(np.argmin(values))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, S_SCAN_POINTS - 1)]
    seed_s = grid[k] if k > 0 else grid[1]
    seed_f = values[k] if k > 0 else values[1]
    s_best, f_best = _golden_section(
        lambda s: max_overlap(spectral_data, s), lo, hi, (seed_s, seed_f)
    )
    if endpoint <= f_best:
        return 0.0, endpoint, True
    return float(s_best), float(f_best), False


def chernoff_from_spectra(spectral_data: SpectralData) -> ChernoffResult:
    """Chernoff saddle point for spectrally described block-diagonal data."""
    s_opt, overlap, boundary = _minimize_overlap(spectral_data)
    if boundary:
        weights, overlap = optimal_weights_at_zero(spectral_data)
    else:
        weights = optimal_weights(spectral_data, s_opt)
    overlap = min(overlap, 1.0)
    return ChernoffResult(s_opt, overlap, 1.0 - overlap, weights, boundary)


def chernoff_degree(state: TwoModeState) -> ChernoffResult:
    """Chernoff degree of polarization of a two-mode state.

    The state is block-diagonalized first, so cross-manifold coherences
    never influence the result.
    """
    return chernoff_from_spectra(spectra(block_diagonalize(state)))


def fidelity_unpolarized(spectral_data: SpectralData) -> float:
    """Maximal fidelity to the unpolarized set: sum_N p_N xi_N(1/2)^2/(N+1)."""
    return sum(m.weight * m.xi(0.5) ** 2 / m.dim for m in spectral_data.manifolds)


def bures_from_spectra(spectral_data: SpectralData) -> BuresResult:
    fid = min(fidelity_unpolarized(spectral_data), 1.0)
    return BuresResult(1.0 - math.sqrt(fid), fid, optimal_weights(spectral_data, 0.5))


def bures_degree(state: TwoModeState) -> BuresResult:
    """Bures degree of polarization, 1 - sqrt(maximal fidelity)."""
    return bures_from_spectra(spectra(block_diagonalize(state)))


# ---------------------------------------------------------------------------
# Dense-matrix overlap oracles for arbitrary density matrices


def _eig_density(mat: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Validate a density matrix and return clamped eigenvalues and vectors."""
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidStateError(f"{name} must be a square matrix")
    herm = np.max(np.abs(arr - arr.conj().T)) / 2
    if herm > HERMITICITY_TOL:
        raise InvalidStateError(f"{name}: hermiticity defect {herm:.6e}")
    if abs(np.trace(arr).real - 1.0) > NORM_TOL:
        raise InvalidStateError(f"{name}: trace is {np.trace(arr).real}, not 1")
    vals, vecs = np.linalg.eigh((arr + arr.conj().T) / 2)
    if vals[0] < -PSD_TOL:
        raise InvalidStateError(f"{name}: negative eigenvalue {vals[0]:.6e}")
    vals = np.clip(vals, 0.0, None)
    vals[vals < DENSE_EIG_TOL * vals.max()] = 0.0
    return vals, vecs


def _check_same_dim(rho: np.ndarray, sigma: np.ndarray) -> None:
    if np.shape(rho) != np.shape(sigma):
        raise DimensionMismatchError(
            f"dimension mismatch: {np.shape(rho)} vs {np.shape(sigma)}"
        )


def _renyi_from_decompositions(a, overlap_sq, b, s: float) -> float:
    """sum_ij a_i^s b_j^(1-s) |<e_i|f_j>|^2 over positive eigenvalues only."""
    ma, mb = a > 0, b > 0
    return float(
        (a[ma] ** s) @ overlap_sq[np.ix_(ma, mb)] @ (b[mb] ** (1.0 - s))
    )


def general_renyi_overlap(rho: np.ndarray, sigma: np.ndarray, s: float) -> float:
    """Tr(rho^s sigma^(1-s)) via eigendecompositions of both matrices.

    Zero eigenvalues are excluded, so the endpoints reduce to support
    projections (the 0^0 = 0 convention).
    """
    _check_s(s)
    _check_same_dim(rho, sigma)
    a, e = _eig_density(rho, "rho")
    b, f = _eig_density(sigma, "sigma")
    overlap_sq = np.abs(e.conj().T @ f) ** 2
    return _renyi_from_decompositions(a, overlap_sq, b, s)


class GeneralChernoffResult(NamedTuple):
    overlap: float
    s_opt: float

    @property
    def exponent(self) -> float:
        """Chernoff bound exponent, -ln(overlap); infinite for orthogonal states."""
        if self.overlap == 0.0:
            return math.inf
        return -math.log(self.overlap)


def chernoff_overlap_general(rho: np.ndarray, sigma: np.ndarray) -> GeneralChernoffResult:
    """min over s in [0, 1] of Tr(rho^s sigma^(1-s)), with the minimizer."""
    _check_same_dim(rho, sigma)
    a, e = _eig_density(rho, "rho")
    b, f = _eig_density(sigma, "sigma")
    overlap_sq = np.abs(e.conj().T @ f) ** 2

    def fn(s: float) -> float:
        return _renyi_from_decompositions(a, overlap_sq, b, s)

    grid = np.linspace(0.0, 1.0, S_SCAN_POINTS)
    values = np.array([fn(s) for s in grid])
    k = int(np.argmin(values))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, S_SCAN_POINTS - 1)]
    s_best, f_best = _golden_section(fn, lo, hi, (grid[k], values[k]))
    return GeneralChernoffResult(float(min(f_best, 1.0)), float(s_best))


def single_copy_error_probability(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Minimal error probability when discriminating two equiprobable states.

    (1 - ||rho - sigma||_1 / 2) / 2, with the trace norm from the
    eigenvalues of the Hermitian difference.
    """
    _check_same_dim(rho, sigma)
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    diff = (diff + diff.conj().T) / 2
    trace_norm = float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
    return 0.5 * (1.0 - 0.5 * trace_norm)
