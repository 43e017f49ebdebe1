"""Tests for seqnorms.evaluation.spaces."""
import math

# 3rd party libraries
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

# Local imports
from seqnorms.evaluation import optim
from seqnorms.evaluation import spaces
from seqnorms.evaluation.spaces import (FiniteSequence, OrliczFunction,
                                        SequenceError, SpaceSpec,
                                        SpecValidationError)


# Constants ############################################################

SQUARE_TABLE = [[t, t * t] for t in np.arange(1, 61) * 0.05]

SYMMETRIC_SPACES = [
    SpaceSpec.lp(1),
    SpaceSpec.lp(2.5),
    SpaceSpec.lp('inf'),
    SpaceSpec.c0(),
    SpaceSpec.orlicz([OrliczFunction('power', p=3)]),
    SpaceSpec.lorentz('geometric:0.5', p=1),
    SpaceSpec.lorentz('power:0.5', p=2),
    SpaceSpec.garling_mu('power:1', p=2),
    SpaceSpec.sargent_m('sqrt'),
    SpaceSpec.sargent_n('power:0.7'),
]

DUAL_PAIRS = [
    SpaceSpec.lp(1),
    SpaceSpec.lp(1.5),
    SpaceSpec.lp(3),
    SpaceSpec.sargent_m('sqrt'),
    SpaceSpec.sargent_n('power:0.4'),
]

coordinates = st.floats(-10, 10).map(lambda v: round(v, 6))
sequences = arrays(np.float64, st.integers(1, 8), elements=coordinates)
pairs = arrays(np.float64, st.tuples(st.just(2), st.integers(1, 8)),
               elements=coordinates)


# Closed forms #########################################################

def test_lp_two_is_euclidean():
    assert spaces.evaluate_norm(SpaceSpec.lp(2), [3, 4]) == pytest.approx(5)


def test_orlicz_square_is_euclidean():
    spec = SpaceSpec.orlicz([OrliczFunction('power', p=2)])
    assert spaces.evaluate_norm(spec, [3, 4]) == pytest.approx(5, rel=1e-10)


def test_lorentz_pairs_largest_modulus_with_largest_weight():
    spec = SpaceSpec.lorentz('geometric:0.5', p=1)
    assert spaces.evaluate_norm(spec, [1, 2]) == pytest.approx(2.5)


def test_sargent_m_two_equal_coordinates():
    spec = SpaceSpec.sargent_m('sqrt')
    assert spaces.evaluate_norm(spec, [1, 1]) == pytest.approx(math.sqrt(2))


def test_empty_sequence_has_norm_zero():
    for spec in SYMMETRIC_SPACES:
        assert spaces.evaluate_norm(spec, []) == 0


def test_orlicz_power_matches_lp(rng):
    seq = rng.normal(size=7)
    spec = SpaceSpec.orlicz([OrliczFunction('power', p=3)])
    assert_allclose(spaces.evaluate_norm(spec, seq),
                    spaces.evaluate_norm(SpaceSpec.lp(3), seq), rtol=1e-10)


def test_modular_space_uses_one_function_per_coordinate():
    spec = SpaceSpec.orlicz([{'kind': 'power', 'p': 2},
                             {'kind': 'power', 'p': 4}])
    assert spec.is_modular and not spec.is_symmetric
    assert spaces.evaluate_norm(spec, [1, 0]) == pytest.approx(1, rel=1e-10)
    assert spaces.evaluate_norm(spec, [0, 1]) == pytest.approx(1, rel=1e-10)
    assert spaces.kothe_dual_spec(spec) is None


def test_tabulated_orlicz_is_close_to_square():
    spec = SpaceSpec.orlicz([OrliczFunction('tabulated',
                                            breakpoints=SQUARE_TABLE)])
    assert spaces.evaluate_norm(spec, [3, 4]) == pytest.approx(5, rel=1e-2)


@pytest.mark.parametrize('seq, expected', [
    ([1, -3, 2], [3, 2, 1]),
    ([0, 0], [0, 0]),
])
def test_decreasing_rearrangement(seq, expected):
    assert spaces.decreasing_rearrangement(seq).as_list() == expected


def test_decreasing_rearrangement_matches_sort(rng):
    seq = rng.normal(size=8)
    star = spaces.decreasing_rearrangement(seq)
    assert_allclose(star.coeffs, np.sort(np.abs(seq))[::-1])
    assert spaces.decreasing_rearrangement(star) == star


def test_evaluate_norms_works_row_by_row():
    rows = np.array([[3.0, 4.0], [0.0, 0.0], [-1.0, 0.0]])
    assert_allclose(spaces.evaluate_norms(SpaceSpec.lp(2), rows), [5, 0, 1])


# Weights ##############################################################

@pytest.mark.parametrize('rule, growing, expected', [
    ('geometric:0.5', False, [1, 0.5, 0.25]),
    ('power:1', False, [1, 0.5, 1 / 3]),
    ('sqrt', True, [1, math.sqrt(2), math.sqrt(3)]),
])
def test_weight_tail_rules(rule, growing, expected):
    weights = spaces.WeightSequence((), rule, growing)
    assert_allclose(weights.values(3), expected)


def test_weight_prefix_overrides_the_rule():
    weights = spaces.WeightSequence([2], 'geometric:0.5')
    assert_allclose(weights.values(3), [2, 0.5, 0.25])
    assert_allclose(spaces.WeightSequence([1, 2]).values(4), [1, 2, 2, 2])


@pytest.mark.parametrize('prefix, tail', [
    ((), None),
    ((), 'cubic'),
    ((), 'power:x'),
    ((), 'sqrt:2'),
])
def test_bad_weights_are_rejected(prefix, tail):
    with pytest.raises(SpecValidationError):
        spaces.WeightSequence(prefix, tail)


# Duals ################################################################

def test_kothe_duals():
    assert spaces.kothe_dual_spec(SpaceSpec.lp(2)) == SpaceSpec.lp(2)
    assert spaces.kothe_dual_spec(SpaceSpec.lp(1)) == SpaceSpec.lp('inf')
    assert spaces.kothe_dual_spec(SpaceSpec.c0()) == SpaceSpec.lp(1)
    assert spaces.kothe_dual_spec(SpaceSpec.garling_mu('power:1', p=2)) == \
        SpaceSpec.garling_nu('power:1', p=2)
    assert spaces.kothe_dual_spec(SpaceSpec.sargent_m('sqrt')) == \
        SpaceSpec.sargent_n('sqrt')
    assert spaces.kothe_dual_spec(SpaceSpec.lorentz('sqrt')) is None
    tabulated = SpaceSpec.orlicz([OrliczFunction('tabulated',
                                                 breakpoints=SQUARE_TABLE)])
    assert spaces.kothe_dual_spec(tabulated) is None


def test_sargent_weights_with_growing_increments():
    # phi = (1, 1.2, 1.7) has phi_j / j decreasing but increments 1, 0.2, 0.5
    weights = {'prefix': [1, 1.2, 1.7]}
    n_space = SpaceSpec.sargent_n(weights)
    assert not n_space.concave
    assert spaces.evaluate_norm(n_space, [1, 1]) == pytest.approx(1.5)
    assert spaces.evaluate_norm(n_space, [3, 2, 1]) == pytest.approx(4.2)
    assert spaces.brute_force_norm(n_space, [1, 1]) == pytest.approx(1.5)
    assert spaces.evaluate_norm(SpaceSpec.sargent_m(weights), [1, 1]) == \
        pytest.approx(2 / 1.2)
    assert spaces.kothe_dual_spec(n_space) is None
    assert spaces.holder_extremal(SpaceSpec.sargent_m(weights), [1, 1]) is None


@pytest.mark.parametrize('spec, seq, expected', [
    (SpaceSpec.lp(2), [3, 4], 5),
    (SpaceSpec.lp(1), [1, -2, 3], 3),
    (SpaceSpec.lp('inf'), [1, -2, 3], 6),
])
def test_closed_form_dual_norms(spec, seq, expected):
    found = spaces.dual_norm(spec, seq)
    assert found.bound_direction == optim.EXACT
    assert found.value == pytest.approx(expected)
    assert spaces.evaluate_norm(spec, found.witness) <= 1 + 1e-12


def test_dual_norm_of_tabulated_orlicz_is_searched(budget):
    spec = SpaceSpec.orlicz([OrliczFunction('tabulated',
                                            breakpoints=SQUARE_TABLE)])
    found = spaces.dual_norm(spec, [3, 4], budget)
    assert found.bound_direction == optim.LOWER_OF_SUP
    assert found.value == pytest.approx(5, rel=5e-2)
    assert spaces.evaluate_norm(spec, found.witness) <= 1 + 1e-9


@pytest.mark.parametrize('spec', DUAL_PAIRS)
def test_holder_extremal_norms_the_dual(spec, rng):
    beta = rng.normal(size=6)
    point = spaces.holder_extremal(spec, beta)
    dual = spaces.kothe_dual_spec(spec)
    assert spaces.evaluate_norm(spec, point) <= 1 + 1e-12
    assert_allclose(point @ np.abs(beta), spaces.evaluate_norm(dual, beta),
                    rtol=1e-12)


def test_bidual_recovers_the_norm(budget):
    found = spaces.bidual_norm(SpaceSpec.lp(2), [3, 4], budget)
    assert found.value == pytest.approx(5, rel=1e-9)
    with pytest.raises(SpecValidationError):
        spaces.bidual_norm(SpaceSpec.lorentz('sqrt'), [1, 2], budget)


def test_garling_nu_of_first_unit_vector(budget):
    spec = SpaceSpec.garling_nu('power:1', p=2)
    found = spaces.garling_nu_norm(spec, [1], budget)
    assert found.bound_direction == optim.UPPER_OF_INF
    assert found.value == pytest.approx(1)


def test_garling_nu_witness_is_feasible(budget, rng):
    spec = SpaceSpec.garling_nu('power:0.5', p=3)
    found = spaces.garling_nu_norm(spec, rng.normal(size=5), budget)
    k = found.witness
    assert np.all(k >= 0) and np.all(np.diff(k) <= 1e-9)
    assert np.linalg.norm(k, spaces.conjugate(3)) <= 1 + 1e-9


def test_garling_holder(budget, rng):
    mu = SpaceSpec.garling_mu('power:0.5', p=2)
    nu = spaces.kothe_dual_spec(mu)
    for _ in range(5):
        alpha, beta = rng.normal(size=4), rng.normal(size=4)
        bound = spaces.evaluate_norm(mu, alpha) * \
            spaces.evaluate_norm(nu, beta, budget)
        assert np.abs(alpha) @ np.abs(beta) <= bound + 1e-9


# Unit vectors and iteration ###########################################

def test_unit_vector_norms():
    assert spaces.unit_vector_norm(SpaceSpec.lp(3), 7) == pytest.approx(1)
    assert spaces.unit_vector_norm(SpaceSpec.garling_mu('sqrt', p=2), 1) == \
        pytest.approx(1)
    assert spaces.unit_vector_norm(SpaceSpec.sargent_m('sqrt'), 1) == \
        pytest.approx(1)
    with pytest.raises(SequenceError):
        spaces.unit_vector_norm(SpaceSpec.lp(2), 0)


def test_nip_identity_in_l2():
    result = spaces.nip_check(SpaceSpec.lp(2), [[1, 0], [0, 1]])
    assert_allclose(list(result), [math.sqrt(2), math.sqrt(2), 0], atol=1e-12)
    assert result.passed and result.enforced


def test_nip_lp_random(rng):
    result = spaces.nip_check(SpaceSpec.lp(3), rng.normal(size=(4, 4)))
    assert result.gap <= 1e-12 * max(1.0, result.row_value)
    assert result.passed


def test_nip_sargent_gap_is_informational():
    result = spaces.nip_check(SpaceSpec.sargent_m('sqrt'), [[2, 1], [0, 1]])
    assert result.row_value == pytest.approx(1.5 + 1 / math.sqrt(2))
    assert result.col_value == pytest.approx(1 + math.sqrt(2))
    assert result.gap == pytest.approx(1 / math.sqrt(2) - 0.5)
    assert not result.enforced
    assert result.passed


# Brute force ##########################################################

@pytest.mark.parametrize('spec', [
    SpaceSpec.lorentz('geometric:0.6', p=1.5),
    SpaceSpec.garling_mu('power:0.5', p=2),
    SpaceSpec.sargent_m('sqrt'),
    SpaceSpec.sargent_n('power:0.5'),
])
def test_rearrangement_matches_brute_force(spec, rng):
    for _ in range(5):
        seq = rng.normal(size=int(rng.integers(1, 6)))
        assert_allclose(spaces.evaluate_norm(spec, seq),
                        spaces.brute_force_norm(spec, seq), rtol=1e-12)


def test_brute_force_limits():
    with pytest.raises(SequenceError):
        spaces.brute_force_norm(SpaceSpec.sargent_m('sqrt'), np.ones(9))
    with pytest.raises(SpecValidationError):
        spaces.brute_force_norm(SpaceSpec.lp(2), [1, 2])


# Validation ###########################################################

@pytest.mark.parametrize('make', [
    lambda: SpaceSpec.lp(0.5),
    lambda: SpaceSpec('hardy'),
    lambda: SpaceSpec('c0', p=2),
    lambda: SpaceSpec.lorentz('geometric:2'),
    lambda: SpaceSpec.lorentz([1, 0.5, 0.75]),
    lambda: SpaceSpec.lorentz('bad'),
    lambda: SpaceSpec.garling_nu('sqrt', p=1),
    lambda: SpaceSpec.sargent_m('geometric:2'),
    lambda: SpaceSpec.sargent_m([1, 3]),
    lambda: SpaceSpec.orlicz([OrliczFunction('tabulated',
                                             breakpoints=[[1, 1], [2, 1.5]])]),
    lambda: SpaceSpec.orlicz([]),
])
def test_invalid_specs(make):
    with pytest.raises(SpecValidationError):
        make()


@pytest.mark.parametrize('coeffs', [[[1, 2], [3, 4]], [1, float('nan')],
                                    [1, float('inf')]])
def test_invalid_sequences(coeffs):
    with pytest.raises(SequenceError):
        FiniteSequence(coeffs)


@pytest.mark.parametrize('spec', SYMMETRIC_SPACES)
def test_spec_dict_round_trip(spec):
    assert SpaceSpec.from_dict(spec.as_dict()) == spec


def test_spec_from_dict_aliases():
    spec = SpaceSpec.from_dict({'family': 'sargent_n',
                                'params': {'phi': {'tail': 'sqrt'}}})
    assert spec == SpaceSpec.sargent_n('sqrt')
    with pytest.raises(SpecValidationError):
        SpaceSpec.from_dict({'family': 'lp', 'params': {'q': 2}})


# Properties ###########################################################

@pytest.mark.parametrize('spec', SYMMETRIC_SPACES)
@settings(max_examples=40, deadline=None)
@given(seq=sequences, factor=st.floats(-5, 5).map(lambda v: round(v, 3)))
def test_absolute_homogeneity(spec, seq, factor):
    value = spaces.evaluate_norm(spec, factor * seq)
    expected = abs(factor) * spaces.evaluate_norm(spec, seq)
    assert value == pytest.approx(expected, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize('spec', SYMMETRIC_SPACES)
@settings(max_examples=40, deadline=None)
@given(pair=pairs)
def test_triangle_inequality(spec, pair):
    a, b = pair
    total = spaces.evaluate_norm(spec, a + b)
    bound = spaces.evaluate_norm(spec, a) + spaces.evaluate_norm(spec, b)
    assert total <= bound * (1 + 1e-9) + 1e-12


@pytest.mark.parametrize('spec', SYMMETRIC_SPACES)
@settings(max_examples=40, deadline=None)
@given(seq=sequences, data=st.data())
def test_normality(spec, seq, data):
    shrink = data.draw(arrays(np.float64, seq.shape,
                              elements=st.floats(0, 1).map(lambda v: round(v, 6))))
    smaller = spaces.evaluate_norm(spec, shrink * seq)
    assert smaller <= spaces.evaluate_norm(spec, seq) * (1 + 1e-9) + 1e-12


@pytest.mark.parametrize('spec', SYMMETRIC_SPACES)
@settings(max_examples=40, deadline=None)
@given(seq=sequences, data=st.data())
def test_symmetry(spec, seq, data):
    order = data.draw(st.permutations(range(seq.size)))
    assert spaces.evaluate_norm(spec, seq[list(order)]) == pytest.approx(
        spaces.evaluate_norm(spec, seq), rel=1e-10, abs=1e-15)


@pytest.mark.parametrize('spec', DUAL_PAIRS)
@settings(max_examples=40, deadline=None)
@given(pair=pairs)
def test_holder_inequality(spec, pair):
    alpha, beta = pair
    dual = spaces.kothe_dual_spec(spec)
    bound = spaces.evaluate_norm(spec, alpha) * spaces.evaluate_norm(dual, beta)
    assert np.abs(alpha) @ np.abs(beta) <= bound * (1 + 1e-9) + 1e-12


@settings(max_examples=40, deadline=None)
@given(seq=sequences)
def test_rearrangement_is_idempotent(seq):
    star = spaces.decreasing_rearrangement(seq)
    assert spaces.decreasing_rearrangement(star) == star
    assert sorted(star.as_list()) == sorted(np.abs(seq).tolist())
