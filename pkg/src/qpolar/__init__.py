"""Distance-type degrees of polarization for two-mode quantum light.

The library represents two-mode field states in the photon-number-ordered
Fock basis, dephases them into excitation-manifold blocks, and measures how
distinguishable the result is from the set of SU(2)-invariant (unpolarized)
states: the Chernoff degree uses the quantum Chernoff overlap, the Bures
degree the Uhlmann fidelity.  Closed-form fast paths cover two-manifold
superposition and mixture families, and a CLI emits plot-ready CSV grids
and sweeps.
"""

from .errors import DimensionMismatchError, DomainError, InvalidStateError
from .families import (
    MixtureFamily,
    SuperpositionFamily,
    mixture_degrees,
    mixture_renyi,
    mixture_state,
    pure_state_degrees,
    superposition_bures,
    superposition_chernoff,
    superposition_renyi,
    superposition_state,
    superposition_stationarity_residual,
)
from .measures import (
    BuresResult,
    ChernoffResult,
    GeneralChernoffResult,
    bures_degree,
    bures_from_spectra,
    chernoff_degree,
    chernoff_from_spectra,
    chernoff_overlap_general,
    fidelity_unpolarized,
    general_renyi_overlap,
    max_overlap,
    optimal_weights,
    optimal_weights_at_zero,
    renyi_overlap_unpolarized,
    single_copy_error_probability,
)
from .spectral import ManifoldSpectrum, SpectralData, manifold_spectrum, spectra
from .states import (
    BlockDiagonalState,
    ManifoldBlock,
    PureAmplitudes,
    TwoModeState,
    UnpolarizedWeights,
    ValidationReport,
    block_diagonalize,
    manifold_probabilities,
    max_manifold,
    to_dense,
    validate,
)
from .stateio import StateFileError, read_state, state_from_dict, state_to_dict, write_state
from .su2 import (
    EulerAngles,
    StokesBlock,
    polarization_unitary,
    stokes_block,
    transform_state,
    unpolarized_state,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDiagonalState",
    "BuresResult",
    "ChernoffResult",
    "DimensionMismatchError",
    "DomainError",
    "EulerAngles",
    "GeneralChernoffResult",
    "InvalidStateError",
    "ManifoldBlock",
    "ManifoldSpectrum",
    "MixtureFamily",
    "PureAmplitudes",
    "SpectralData",
    "StateFileError",
    "StokesBlock",
    "SuperpositionFamily",
    "TwoModeState",
    "UnpolarizedWeights",
    "ValidationReport",
    "block_diagonalize",
    "bures_degree",
    "bures_from_spectra",
    "chernoff_degree",
    "chernoff_from_spectra",
    "chernoff_overlap_general",
    "fidelity_unpolarized",
    "general_renyi_overlap",
    "manifold_probabilities",
    "manifold_spectrum",
    "max_manifold",
    "max_overlap",
    "mixture_degrees",
    "mixture_renyi",
    "mixture_state",
    "optimal_weights",
    "optimal_weights_at_zero",
    "polarization_unitary",
    "pure_state_degrees",
    "read_state",
    "renyi_overlap_unpolarized",
    "single_copy_error_probability",
    "spectra",
    "state_from_dict",
    "state_to_dict",
    "stokes_block",
    "superposition_bures",
    "superposition_chernoff",
    "superposition_renyi",
    "superposition_state",
    "superposition_stationarity_residual",
    "to_dense",
    "transform_state",
    "unpolarized_state",
    "validate",
    "write_state",
]
