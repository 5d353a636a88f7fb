"""Two-mode field states in the photon-number-ordered Fock basis.

A two-mode state lives on the basis ``|n, N-n>`` (``n`` photons in the
horizontal mode, ``N-n`` in the vertical one, ``N`` the total photon
number).  States are stored either as a sparse list of pure amplitudes or
as a block-diagonal mixture of excitation-manifold blocks.  The ideal
non-selective measurement of the total photon number maps the former onto
the latter while preserving the photon-number distribution.

All containers are immutable after construction; every operation here is a
pure function, safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import DomainError, InvalidStateError

# Numerical tolerances.  Violations beyond these are hard failures; smaller
# defects are treated as round-off.
NORM_TOL = 1e-9          # |sum of probabilities - 1|
HERMITICITY_TOL = 1e-10  # max entry of |M - M^dagger| / 2
PSD_TOL = 1e-10          # eigenvalues below -PSD_TOL are a hard failure
TRACE_TOL = 1e-10        # |tr(block) - weight|
WEIGHT_DROP_TOL = 1e-12  # manifold blocks lighter than this are dropped


def _norm_sq(vec: np.ndarray) -> float:
    return float(np.vdot(vec, vec).real)


@dataclass(frozen=True)
class PureAmplitudes:
    """Pure two-mode state as a sparse list of Fock amplitudes.

    ``entries`` holds ``(N, n, amplitude)`` triples over the basis
    ``|n, N-n>``; the amplitudes must be normalized to unit total
    probability within ``NORM_TOL``.
    """

    entries: tuple[tuple[int, int, complex], ...]

    def __post_init__(self):
        canon = []
        seen = set()
        for item in self.entries:
            n_total, n, amp = item
            if not isinstance(n_total, (int, np.integer)) or not isinstance(n, (int, np.integer)):
                raise InvalidStateError(f"Fock indices must be integers, got {item!r}")
            n_total, n = int(n_total), int(n)
            if n_total < 0 or not 0 <= n <= n_total:
                raise InvalidStateError(f"index (N={n_total}, n={n}) outside the manifold")
            if (n_total, n) in seen:
                raise InvalidStateError(f"duplicate amplitude for (N={n_total}, n={n})")
            seen.add((n_total, n))
            canon.append((n_total, n, complex(amp)))
        if not canon:
            raise InvalidStateError("pure state needs at least one amplitude")
        canon.sort(key=lambda e: (e[0], e[1]))
        object.__setattr__(self, "entries", tuple(canon))

    @property
    def truncation(self) -> int:
        """Largest photon number with a stored amplitude."""
        return self.entries[-1][0]

    @property
    def manifolds(self) -> tuple[int, ...]:
        return tuple(sorted({n_total for n_total, _, _ in self.entries}))

    def manifold_vector(self, n_photons: int) -> np.ndarray:
        """Amplitude vector of one manifold, indexed by n = 0..N."""
        vec = np.zeros(n_photons + 1, dtype=complex)
        for n_total, n, amp in self.entries:
            if n_total == n_photons:
                vec[n] = amp
        return vec

    def norm_squared(self) -> float:
        return sum(abs(amp) ** 2 for _, _, amp in self.entries)


@dataclass(frozen=True)
class ManifoldBlock:
    """One excitation manifold of a block-diagonal state.

    ``matrix`` is the unnormalized ``(N+1) x (N+1)`` block whose trace is the
    manifold weight ``p_N``.  ``weight`` defaults to the real part of that
    trace.
    """

    n_photons: int
    matrix: np.ndarray
    weight: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.n_photons < 0:
            raise InvalidStateError("photon number must be non-negative")
        mat = np.array(self.matrix, dtype=complex)
        dim = self.n_photons + 1
        if mat.shape != (dim, dim):
            raise InvalidStateError(
                f"block N={self.n_photons} must be {dim}x{dim}, got {mat.shape}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        w = self.weight
        if w is None:
            w = float(np.trace(mat).real)
        object.__setattr__(self, "weight", float(w))

    @property
    def dim(self) -> int:
        return self.n_photons + 1

    def normalized(self) -> np.ndarray:
        """Unit-trace density matrix of the manifold (requires weight > 0)."""
        if self.weight <= 0:
            raise InvalidStateError(f"block N={self.n_photons} has non-positive weight")
        return np.asarray(self.matrix) / self.weight


@dataclass(frozen=True)
class BlockDiagonalState:
    """Mixture of manifold blocks, sorted by photon number.

    Only manifolds with positive weight are stored; mass removed by the
    construction (below ``WEIGHT_DROP_TOL``) is accounted for in
    ``discarded_weight`` and reported by :func:`validate`.
    """

    blocks: tuple[ManifoldBlock, ...]
    discarded_weight: float = 0.0

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise InvalidStateError("block-diagonal state needs at least one block")
        ns = [b.n_photons for b in blocks]
        if any(x >= y for x, y in zip(ns, ns[1:])):
            raise InvalidStateError("manifold indices must be strictly increasing")
        object.__setattr__(self, "blocks", blocks)

    @property
    def manifolds(self) -> tuple[int, ...]:
        return tuple(b.n_photons for b in self.blocks)

    @property
    def includes_vacuum(self) -> bool:
        """True when part of the weight sits in the N=0 (vacuum) manifold."""
        return self.blocks[0].n_photons == 0

    def block(self, n_photons: int) -> ManifoldBlock:
        for b in self.blocks:
            if b.n_photons == n_photons:
                return b
        raise KeyError(f"no block for N={n_photons}")


TwoModeState = Union[PureAmplitudes, BlockDiagonalState]


@dataclass(frozen=True)
class UnpolarizedWeights:
    """Photon-number distribution of an SU(2)-invariant state."""

    weights: tuple[tuple[int, float], ...]

    def __init__(self, weights):
        if isinstance(weights, Mapping):
            items = weights.items()
        else:
            items = weights
        canon = []
        for n_total, w in items:
            n_total = int(n_total)
            w = float(w)
            if n_total < 0:
                raise InvalidStateError("photon number must be non-negative")
            if w < -1e-12 or w > 1 + 1e-12:
                raise InvalidStateError(f"weight pi_{n_total}={w} outside [0, 1]")
            canon.append((n_total, w))
        canon.sort()
        if len({n for n, _ in canon}) != len(canon):
            raise InvalidStateError("duplicate manifold in weights")
        total = sum(w for _, w in canon)
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidStateError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "weights", tuple(canon))

    def as_dict(self) -> dict[int, float]:
        return dict(self.weights)

    def get(self, n_photons: int) -> float:
        return dict(self.weights).get(n_photons, 0.0)

    @property
    def manifolds(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.weights)


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class BlockDiagnostics:
    n_photons: int
    hermiticity_defect: float
    min_eigenvalue: float
    trace_defect: float


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    total_trace_defect: float
    discarded_weight: float
    failures: tuple[str, ...]
    blocks: tuple[BlockDiagnostics, ...] = ()

    def message(self) -> str:
        return "; ".join(self.failures) if self.failures else "ok"


def validate(state: TwoModeState) -> ValidationReport:
    """Diagnostic check of all numerical invariants; never raises."""
    failures: list[str] = []
    if isinstance(state, PureAmplitudes):
        defect = abs(state.norm_squared() - 1.0)
        if defect > NORM_TOL:
            failures.append(f"total trace defect {defect:.6e} (amplitude norm)")
        return ValidationReport(not failures, defect, 0.0, tuple(failures))

    diags = []
    total = 0.0
    for b in state.blocks:
        mat = np.asarray(b.matrix)
        herm = float(np.max(np.abs(mat - mat.conj().T)) / 2)
        eigs = np.linalg.eigvalsh((mat + mat.conj().T) / 2)
        min_eig = float(eigs[0])
        tr_defect = float(abs(np.trace(mat).real - b.weight))
        diags.append(BlockDiagnostics(b.n_photons, herm, min_eig, tr_defect))
        total += b.weight
        if herm > HERMITICITY_TOL:
            failures.append(f"block N={b.n_photons}: hermiticity defect {herm:.6e}")
        if min_eig < -PSD_TOL:
            failures.append(f"block N={b.n_photons}: negative eigenvalue {min_eig:.6e}")
        if tr_defect > TRACE_TOL:
            failures.append(f"block N={b.n_photons}: trace defect {tr_defect:.6e}")
        if b.weight <= 0:
            failures.append(f"block N={b.n_photons}: non-positive weight {b.weight:.6e}")
    total_defect = abs(total - 1.0)
    if total_defect > NORM_TOL + state.discarded_weight:
        failures.append(f"total trace defect {total_defect:.6e}")
    return ValidationReport(
        not failures, total_defect, state.discarded_weight, tuple(failures), tuple(diags)
    )


def require_valid(state: TwoModeState) -> None:
    report = validate(state)
    if not report.passed:
        raise InvalidStateError(report.message())


# ---------------------------------------------------------------------------
# Operations


def manifold_probabilities(state: TwoModeState) -> dict[int, float]:
    """Photon-number distribution p_N = Tr(rho P_N)."""
    require_valid(state)
    if isinstance(state, PureAmplitudes):
        return {n: _norm_sq(state.manifold_vector(n)) for n in state.manifolds}
    return {b.n_photons: b.weight for b in state.blocks}


def block_diagonalize(state: TwoModeState) -> BlockDiagonalState:
    """Project onto the excitation manifolds: rho -> sum_N P_N rho P_N.

    Idempotent on block-diagonal input (returned unchanged); preserves the
    photon-number distribution exactly.
    """
    require_valid(state)
    if isinstance(state, BlockDiagonalState):
        return state
    blocks = []
    discarded = 0.0
    for n_total in state.manifolds:
        vec = state.manifold_vector(n_total)
        w = _norm_sq(vec)
        if w < WEIGHT_DROP_TOL:
            discarded += w
            continue
        blocks.append(ManifoldBlock(n_total, np.outer(vec, vec.conj()), w))
    if not blocks:
        raise InvalidStateError("state has no manifold with non-negligible weight")
    return BlockDiagonalState(tuple(blocks), discarded)


# ---------------------------------------------------------------------------
# Dense embedding (stacked manifold basis, used by oracles and the CLI)


def basis_offset(n_photons: int) -> int:
    """Index of |0, N> in the stacked basis ordered by (N, n)."""
    return n_photons * (n_photons + 1) // 2


def dense_dimension(truncation: int) -> int:
    return (truncation + 1) * (truncation + 2) // 2


def max_manifold(state: TwoModeState) -> int:
    if isinstance(state, PureAmplitudes):
        return state.truncation
    return state.blocks[-1].n_photons


def to_dense(state: TwoModeState, truncation: int | None = None) -> np.ndarray:
    """Full density matrix on the manifolds 0..truncation.

    Pure states keep their cross-manifold coherences; block-diagonal states
    are embedded block by block.
    """
    needed = max_manifold(state)
    if truncation is None:
        truncation = needed
    if truncation < needed:
        raise DomainError(
            f"truncation {truncation} too small for a state reaching N={needed}"
        )
    dim = dense_dimension(truncation)
    if isinstance(state, PureAmplitudes):
        psi = np.zeros(dim, dtype=complex)
        for n_total, n, amp in state.entries:
            psi[basis_offset(n_total) + n] = amp
        return np.outer(psi, psi.conj())
    rho = np.zeros((dim, dim), dtype=complex)
    for b in state.blocks:
        off = basis_offset(b.n_photons)
        rho[off:off + b.dim, off:off + b.dim] = b.matrix
    return rho
