import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpolar import (
    DimensionMismatchError,
    DomainError,
    PureAmplitudes,
    UnpolarizedWeights,
    block_diagonalize,
    bures_degree,
    chernoff_degree,
    chernoff_overlap_general,
    fidelity_unpolarized,
    general_renyi_overlap,
    max_overlap,
    optimal_weights,
    optimal_weights_at_zero,
    renyi_overlap_unpolarized,
    single_copy_error_probability,
    spectra,
    to_dense,
    transform_state,
    unpolarized_state,
)
from qpolar.families import (
    MixtureFamily,
    SuperpositionFamily,
    mixture_state,
    superposition_spectra,
)

from util import (
    deviated_block_state,
    random_angles,
    random_block_state,
    random_density_matrix,
    random_pure_state,
)

RNG = np.random.default_rng(314159)

SUPER_EXAMPLE = SuperpositionFamily(1, 2, 0.1)
MIX_EXAMPLE = MixtureFamily(0.1, 0.1, 0.01, 0.04)


def example_pure_state():
    return PureAmplitudes(
        ((1, 1, complex(math.sqrt(0.1))), (2, 0, complex(math.sqrt(0.9))))
    )


# ---------------------------------------------------------------------------
# Renyi overlap against unpolarized states


def test_renyi_overlap_of_unpolarized_state_with_itself_is_one():
    weights = UnpolarizedWeights({0: 0.3, 2: 0.7})
    spec = spectra(unpolarized_state(weights))
    for s in (0.0, 0.2, 0.5, 1.0):
        assert renyi_overlap_unpolarized(spec, weights, s) == pytest.approx(1.0, abs=1e-12)


def test_renyi_overlap_saddle_point_value():
    # overlap at the reported saddle coordinates of the two-manifold example
    spec = superposition_spectra(SUPER_EXAMPLE)
    q = renyi_overlap_unpolarized(spec, UnpolarizedWeights({1: 0.634, 2: 0.366}), 0.124)
    assert q == pytest.approx(0.431, abs=1e-3)


def test_renyi_overlap_matches_dense_oracle():
    for _ in range(15):
        state = random_block_state(RNG)
        spec = spectra(state)
        weights = {n: w for n, w in zip(state.manifolds, RNG.dirichlet(np.ones(len(state.manifolds))))}
        w = UnpolarizedWeights(weights)
        t = state.manifolds[-1]
        rho = to_dense(state, t)
        sigma = to_dense(unpolarized_state(w), t)
        for s in (0.0, 0.17, 0.5, 0.83, 1.0):
            closed = renyi_overlap_unpolarized(spec, w, s)
            dense = general_renyi_overlap(rho, sigma, s)
            assert closed == pytest.approx(dense, abs=1e-12)


def test_renyi_overlap_rejects_bad_s():
    spec = superposition_spectra(SUPER_EXAMPLE)
    with pytest.raises(DomainError):
        renyi_overlap_unpolarized(spec, UnpolarizedWeights({1: 1.0}), 1.5)


# ---------------------------------------------------------------------------
# Optimal weights


def test_optimal_weights_single_manifold():
    spec = spectra(block_diagonalize(random_pure_state(RNG, manifolds=(3,))))
    for s in (0.1, 0.5, 1.0):
        assert optimal_weights(spec, s).as_dict() == {3: 1.0}


def test_optimal_weights_at_example_saddle():
    res = chernoff_degree(example_pure_state())
    w = optimal_weights(spectra(block_diagonalize(example_pure_state())), res.s_opt)
    assert w.get(1) == pytest.approx(0.634, abs=1e-3)


def test_optimal_weights_match_two_manifold_closed_form():
    for _ in range(10):
        p = float(RNG.uniform(0.05, 0.95))
        s = float(RNG.uniform(0.05, 1.0))
        n1, n2 = sorted(RNG.choice(np.arange(0, 6), size=2, replace=False).tolist())
        fam = SuperpositionFamily(int(n1), int(n2), p)
        pi1 = optimal_weights(superposition_spectra(fam), s).get(int(n1))
        closed = 1.0 / (
            1.0 + (1 - p) / p * ((n1 + 1) / (n2 + 1)) ** (1.0 / s - 1.0)
        )
        assert pi1 == pytest.approx(closed, abs=1e-12)


def test_optimal_weights_rejects_zero_s():
    spec = superposition_spectra(SUPER_EXAMPLE)
    with pytest.raises(DomainError):
        optimal_weights(spec, 0.0)


def test_optimal_weights_at_zero_pure_state():
    spec = spectra(block_diagonalize(random_pure_state(RNG, manifolds=(4,))))
    w, value = optimal_weights_at_zero(spec)
    assert w.as_dict() == {4: 1.0}
    assert value == pytest.approx(0.2, abs=1e-15)


def test_optimal_weights_at_zero_two_rank_one_manifolds():
    w, value = optimal_weights_at_zero(superposition_spectra(SUPER_EXAMPLE))
    assert w.as_dict() == {1: 1.0}
    assert value == 0.5


def test_optimal_weights_at_zero_full_rank_blocks():
    spec = spectra(unpolarized_state(UnpolarizedWeights({1: 0.4, 3: 0.6})))
    _, value = optimal_weights_at_zero(spec)
    assert value == pytest.approx(1.0, abs=1e-15)


def test_optimal_weights_at_zero_tie_breaks_to_smaller_n():
    spec = spectra(unpolarized_state(UnpolarizedWeights({2: 0.5, 4: 0.5})))
    w, _ = optimal_weights_at_zero(spec)
    assert w.as_dict() == {2: 1.0}


# ---------------------------------------------------------------------------
# max_overlap


def test_max_overlap_is_one_at_s_one():
    spec = spectra(random_block_state(RNG))
    assert max_overlap(spec, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_max_overlap_half_squared_is_fidelity():
    for _ in range(10):
        spec = spectra(random_block_state(RNG))
        assert max_overlap(spec, 0.5) ** 2 == pytest.approx(
            fidelity_unpolarized(spec), abs=1e-12
        )


def test_max_overlap_near_example_saddle():
    assert max_overlap(superposition_spectra(SUPER_EXAMPLE), 0.124) == pytest.approx(0.431, abs=1e-3)


def test_max_overlap_continuous_at_zero():
    for _ in range(10):
        spec = spectra(random_block_state(RNG))
        assert max_overlap(spec, 1e-5) == pytest.approx(max_overlap(spec, 0.0), abs=1e-4)
        assert max_overlap(spec, 1e-8) == pytest.approx(max_overlap(spec, 0.0), abs=1e-6)


def test_max_overlap_equals_overlap_at_optimal_weights():
    # minimax consistency: the closed form equals Q_s at the maximizing weights
    for _ in range(10):
        spec = spectra(random_block_state(RNG))
        for s in (0.1, 0.33, 0.5, 0.77, 1.0):
            w = optimal_weights(spec, s)
            assert max_overlap(spec, s) == pytest.approx(
                renyi_overlap_unpolarized(spec, w, s), abs=1e-12
            )


def test_weight_perturbations_never_increase_overlap():
    # first-order optimality of the maximizing weights
    for _ in range(5):
        state = random_block_state(RNG, max_blocks=3)
        if len(state.manifolds) < 2:
            continue
        spec = spectra(state)
        for s in (0.5, 0.3):
            w = optimal_weights(spec, s)
            base = renyi_overlap_unpolarized(spec, w, s)
            items = w.as_dict()
            ns = list(items)
            for i in range(len(ns)):
                for j in range(len(ns)):
                    if i == j or items[ns[j]] < 2e-3:
                        continue
                    shifted = dict(items)
                    shifted[ns[i]] += 1e-3
                    shifted[ns[j]] -= 1e-3
                    q = renyi_overlap_unpolarized(spec, UnpolarizedWeights(shifted), s)
                    assert q <= base + 1e-12


# ---------------------------------------------------------------------------
# Chernoff and Bures degrees


@pytest.mark.parametrize("n", range(6))
def test_chernoff_degree_of_n_photon_pure_state(n):
    state = PureAmplitudes(((n, 0, 1.0 + 0j),))
    res = chernoff_degree(state)
    assert res.boundary_case
    assert res.s_opt == 0.0
    assert res.degree == pytest.approx(n / (n + 1), abs=1e-12)
    assert res.optimal_weights.as_dict() == {n: 1.0}


def test_chernoff_degree_superposition_example():
    res = chernoff_degree(example_pure_state())
    assert res.degree == pytest.approx(0.569, abs=1e-3)
    assert res.overlap == pytest.approx(0.431, abs=1e-3)
    assert not res.boundary_case
    assert res.degree == pytest.approx(1 - res.overlap, abs=1e-15)
    # the stationarity condition puts the saddle at s = 0.128637, where
    # the maximizing weight on the lower manifold is 0.634
    assert res.s_opt == pytest.approx(0.128637, abs=1e-4)
    assert res.optimal_weights.get(1) == pytest.approx(0.634, abs=1e-3)


def test_chernoff_degree_mixture_example():
    res = chernoff_degree(mixture_state(MIX_EXAMPLE))
    assert res.degree == pytest.approx(0.251, abs=1e-3)
    assert res.s_opt == pytest.approx(0.434, abs=1e-3)
    # consistent companions of P_C = 0.251: Q~ = 1 - P_C and the weight
    # formula evaluated at the saddle
    assert res.overlap == pytest.approx(0.749179, abs=1e-4)
    assert res.optimal_weights.get(1) == pytest.approx(0.150219, abs=1e-4)


@pytest.mark.parametrize("n", range(6))
def test_bures_degree_of_n_photon_pure_state(n):
    state = PureAmplitudes(((n, 0, 1.0 + 0j),))
    res = bures_degree(state)
    assert res.degree == pytest.approx(1 - 1 / math.sqrt(n + 1), abs=1e-12)


def test_bures_degree_mixture_example():
    res = bures_degree(mixture_state(MIX_EXAMPLE))
    assert res.degree == pytest.approx(0.247, abs=1e-3)
    assert res.degree == pytest.approx(1 - math.sqrt(res.fidelity), abs=1e-15)


def test_bures_degree_vacuum():
    vacuum = PureAmplitudes(((0, 0, 1.0 + 0j),))
    assert bures_degree(vacuum).degree == pytest.approx(0.0, abs=1e-15)
    assert chernoff_degree(vacuum).degree == pytest.approx(0.0, abs=1e-15)
    assert chernoff_degree(vacuum).boundary_case


def test_bures_is_one_minus_max_overlap_at_half():
    # the fidelity identity: sqrt(F) is the s = 1/2 overlap
    for _ in range(10):
        state = random_block_state(RNG)
        spec = spectra(state)
        assert bures_degree(state).degree == pytest.approx(
            1.0 - max_overlap(spec, 0.5), abs=1e-12
        )


def test_chernoff_dominates_bures():
    for _ in range(50):
        state = random_block_state(RNG)
        assert chernoff_degree(state).degree >= bures_degree(state).degree - 1e-9


def test_degrees_invariant_under_rotation():
    for _ in range(10):
        state = random_block_state(RNG)
        rotated = transform_state(state, random_angles(RNG))
        assert chernoff_degree(rotated).degree == pytest.approx(
            chernoff_degree(state).degree, abs=1e-9
        )
        assert bures_degree(rotated).degree == pytest.approx(
            bures_degree(state).degree, abs=1e-9
        )


def test_degrees_ignore_cross_manifold_coherences():
    state = random_pure_state(RNG)
    bd = block_diagonalize(state)
    assert chernoff_degree(state).degree == chernoff_degree(bd).degree
    assert bures_degree(state).degree == bures_degree(bd).degree


def test_unpolarized_states_have_zero_degree():
    for _ in range(10):
        k = int(RNG.integers(1, 5))
        ns = sorted(RNG.choice(6, size=k, replace=False).tolist())
        w = UnpolarizedWeights(dict(zip(ns, RNG.dirichlet(np.ones(k)))))
        state = unpolarized_state(w)
        assert chernoff_degree(state).degree < 1e-9
        assert bures_degree(state).degree < 1e-9


def test_deviating_states_have_positive_degree():
    for _ in range(10):
        state = deviated_block_state(RNG, min_tv=0.1)
        assert chernoff_degree(state).degree > 1e-4


def test_minimization_beats_scan_refinement_tolerance():
    # the reported minimum is no worse than a fine brute-force scan
    for _ in range(5):
        state = random_block_state(RNG)
        spec = spectra(state)
        res = chernoff_degree(state)
        brute = min(max_overlap(spec, s) for s in np.linspace(0, 1, 20001))
        assert res.overlap <= brute + 1e-9


# ---------------------------------------------------------------------------
# Dense-matrix oracles


def test_general_renyi_overlap_identical_states():
    rho = random_density_matrix(RNG, 4)
    for s in (0.0, 0.3, 1.0):
        assert general_renyi_overlap(rho, rho, s) == pytest.approx(1.0, abs=1e-10)


def test_general_renyi_overlap_orthogonal_pure_states():
    rho = np.diag([1.0, 0.0]).astype(complex)
    sigma = np.diag([0.0, 1.0]).astype(complex)
    assert general_renyi_overlap(rho, sigma, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_general_renyi_overlap_commuting_pair_matches_closed_form():
    state = random_block_state(RNG)
    spec = spectra(state)
    w = UnpolarizedWeights(
        dict(zip(state.manifolds, RNG.dirichlet(np.ones(len(state.manifolds)))))
    )
    rho = to_dense(state)
    sigma = to_dense(unpolarized_state(w), state.manifolds[-1])
    for s in np.linspace(0, 1, 11):
        assert general_renyi_overlap(rho, sigma, float(s)) == pytest.approx(
            renyi_overlap_unpolarized(spec, w, float(s)), abs=1e-12
        )


def test_general_renyi_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        general_renyi_overlap(np.eye(2) / 2, np.eye(3) / 3, 0.5)


@given(st.floats(0.0, 1.0))
@settings(max_examples=30, deadline=None)
def test_general_renyi_overlap_bounded(s):
    rho = random_density_matrix(RNG, 3)
    sigma = random_density_matrix(RNG, 3)
    q = general_renyi_overlap(rho, sigma, s)
    assert 0.0 <= q <= 1.0 + 1e-10


def test_chernoff_overlap_identical_states():
    rho = random_density_matrix(RNG, 3)
    res = chernoff_overlap_general(rho, rho)
    assert res.overlap == pytest.approx(1.0, abs=1e-10)
    assert res.exponent == pytest.approx(0.0, abs=1e-10)


def test_chernoff_overlap_qubit_grid_oracle():
    rho = np.diag([0.9, 0.1]).astype(complex)
    sigma = np.diag([0.5, 0.5]).astype(complex)
    res = chernoff_overlap_general(rho, sigma)
    brute = min(
        general_renyi_overlap(rho, sigma, s) for s in np.linspace(0, 1, 2001)
    )
    assert res.overlap == pytest.approx(brute, abs=1e-6)


def test_chernoff_overlap_random_qubits_match_grid_oracle():
    for _ in range(10):
        rho = random_density_matrix(RNG, 2)
        sigma = random_density_matrix(RNG, 2)
        res = chernoff_overlap_general(rho, sigma)
        brute = min(
            general_renyi_overlap(rho, sigma, s) for s in np.linspace(0, 1, 2001)
        )
        assert res.overlap == pytest.approx(brute, abs=1e-6)


def test_chernoff_overlap_pure_states_is_squared_inner_product():
    for _ in range(5):
        v = RNG.normal(size=3) + 1j * RNG.normal(size=3)
        w = RNG.normal(size=3) + 1j * RNG.normal(size=3)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        rho = np.outer(v, v.conj())
        sigma = np.outer(w, w.conj())
        expected = abs(np.vdot(v, w)) ** 2
        res = chernoff_overlap_general(rho, sigma)
        assert res.overlap == pytest.approx(expected, abs=1e-10)
        # s-independence of the pure-state overlap
        for s in (0.1, 0.5, 0.9):
            assert general_renyi_overlap(rho, sigma, s) == pytest.approx(expected, abs=1e-10)


def test_single_copy_error_probability_trivials():
    rho = random_density_matrix(RNG, 3)
    assert single_copy_error_probability(rho, rho) == pytest.approx(0.5, abs=1e-12)
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert single_copy_error_probability(a, b) == pytest.approx(0.0, abs=1e-12)


def test_single_copy_error_probability_pure_states():
    for _ in range(5):
        v = RNG.normal(size=4) + 1j * RNG.normal(size=4)
        w = RNG.normal(size=4) + 1j * RNG.normal(size=4)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        overlap = abs(np.vdot(v, w)) ** 2
        expected = 0.5 * (1 - math.sqrt(1 - overlap))
        got = single_copy_error_probability(np.outer(v, v.conj()), np.outer(w, w.conj()))
        assert got == pytest.approx(expected, abs=1e-10)


def test_single_copy_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        single_copy_error_probability(np.eye(2) / 2, np.eye(3) / 3)
