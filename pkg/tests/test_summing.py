"""Tests for seqnorms.evaluation.summing."""
import math

# 3rd party libraries
import numpy as np
import pytest
from numpy.testing import assert_allclose

# Local imports
from seqnorms.evaluation import optim
from seqnorms.evaluation import summing
from seqnorms.evaluation import vector_norms
from seqnorms.evaluation.spaces import SpaceSpec
from seqnorms.evaluation.summing import OperatorMatrix
from seqnorms.evaluation.vector_norms import (DimensionError, NormOracle,
                                              VectorSequence)


# Constants ############################################################

L1 = SpaceSpec.lp(1)
L2 = SpaceSpec.lp(2)


# Helpers ##############################################################

def operator(entries, domain='l2', codomain='l2'):
    entries = np.atleast_2d(np.asarray(entries, dtype=float))
    e, d = entries.shape
    return OperatorMatrix(entries, NormOracle.builtin(domain, d),
                          NormOracle.builtin(codomain, e))


# Operators ############################################################

def test_operator_from_dict():
    T = OperatorMatrix.from_dict({'domain': 'l2:2', 'codomain': 'l1:3',
                                  'rows': [[1, 0], [0, 1], [1, 1]]})
    assert T.entries.shape == (3, 2)
    assert T.as_dict()['codomain'] == 'l1:3'
    with pytest.raises(DimensionError):
        OperatorMatrix.from_dict({'domain': 'l2:2', 'codomain': 'l1:3',
                                  'rows': [[1, 0]]})
    with pytest.raises(DimensionError):
        OperatorMatrix.from_dict({'domain': 'l2:2', 'rows': [[1, 0]]})


def test_compose_and_apply():
    T = operator([[1, 2], [3, 4]])
    S = operator([[0, 1], [1, 0]])
    assert_allclose(T.compose(S).entries, [[2, 1], [4, 3]])
    assert_allclose(T.apply([[1, 0]]), [[1, 3]])
    with pytest.raises(DimensionError):
        T.compose(operator([[1, 0, 0]]))


def test_identity_norm():
    I = OperatorMatrix.identity(NormOracle.parse('l2:3'), scale=2)
    assert I.norm() == pytest.approx(2)


# Summing norms ########################################################

def test_pi_of_one_dimensional_identity(budget):
    T = OperatorMatrix.identity(NormOracle.parse('l2:1'))
    found = summing.pi_lambda(L1, T, 3, budget)
    assert found.bound_direction == optim.LOWER_OF_SUP
    assert found.value == pytest.approx(1)


def test_pi_two_of_identity_is_hilbert_schmidt(budget):
    T = OperatorMatrix.identity(NormOracle.parse('l2:2'))
    found = summing.pi_lambda(L2, T, 2, budget)
    assert found.value == pytest.approx(math.sqrt(2), rel=1e-9)
    assert found.witness.shape == (2, 2)


def test_pi_two_stays_below_hilbert_schmidt(budget, rng):
    T = operator(rng.normal(size=(3, 2)))
    found = summing.pi_lambda(L2, T, 3, budget)
    assert found.value <= np.linalg.norm(T.entries, 'fro') * (1 + 1e-9)
    assert found.value >= np.linalg.norm(T.entries, 2) * (1 - 1e-9)


def test_pi_of_rank_one_is_the_norm(budget):
    T = operator(np.outer([1.0, 2.0], [3.0, -1.0]))
    found = summing.pi_lambda(L2, T, 2, budget)
    assert found.value == pytest.approx(np.linalg.norm(T.entries, 2),
                                        rel=1e-9)


def test_pi_witness_is_weak_normalized(budget, rng):
    T = operator(rng.normal(size=(2, 2)))
    found = summing.pi_lambda(L2, T, 2, budget)
    assert np.linalg.norm(found.witness, 2) == pytest.approx(1, rel=1e-9)


def test_pi_mid_of_identity(budget):
    T = OperatorMatrix.identity(NormOracle.parse('l2:2'))
    found = summing.pi_lambda_mid(L2, T, 2, m=3, budget=budget)
    assert found.value == pytest.approx(1)
    assert found.details['m'] == 3


def test_zero_operator_has_exact_zero_norms(budget):
    T = operator(np.zeros((2, 2)))
    for found in (summing.pi_lambda(L2, T, 2, budget),
                  summing.pi_lambda_mid(L2, T, 2, budget=budget),
                  summing.w_lambda_mid(L2, T, 2, budget=budget)):
        assert found.value == 0
        assert found.bound_direction == optim.EXACT


def test_w_mid_of_scalar_identity(budget):
    T = OperatorMatrix.identity(NormOracle.parse('l2:1'))
    found = summing.w_lambda_mid(L1, T, 2, m=2, budget=budget)
    assert found.value == pytest.approx(1, rel=1e-9)
    assert found.witness['S'].shape == (2, 1)
    assert found.witness['xs'].shape == (2, 1)


@pytest.mark.parametrize('spec', [L1, L2])
@pytest.mark.parametrize('norm', [summing.pi_lambda, summing.pi_lambda_mid])
def test_summing_norms_never_decrease_with_the_length(norm, spec, budget,
                                                      rng):
    T = operator(rng.normal(size=(2, 2)))
    found = norm(spec, T, 4, budget=budget)
    profile = found.details['profile']
    assert len(profile) == 4
    assert all(a <= b for a, b in zip(profile, profile[1:]))
    values = [norm(spec, T, n, budget=budget).value for n in range(1, 5)]
    assert values == profile


def test_w_mid_never_decreases_with_the_length(budget, rng):
    T = operator(rng.normal(size=(2, 2)))
    found = summing.w_lambda_mid(L1, T, 3, m=2, budget=budget)
    profile = found.details['profile']
    assert all(a <= b for a, b in zip(profile, profile[1:]))
    assert found.witness['xs'].shape == (3, 2)


@pytest.mark.parametrize('spec', [L1, L2])
def test_rank_one_summing_norms_stay_below_the_factors(spec, budget, rng):
    f, y = rng.normal(size=2), rng.normal(size=2)
    T = operator(np.outer(y, f))
    bound = np.linalg.norm(f) * np.linalg.norm(y)
    for found in (summing.pi_lambda(spec, T, 3, budget),
                  summing.pi_lambda_mid(spec, T, 3, 2, budget),
                  summing.w_lambda_mid(spec, T, 2, 2, budget)):
        assert found.value <= bound * (1 + 1e-9)


@pytest.mark.parametrize('spec', [L1, L2])
def test_rank_one_mid_summing_witness_is_dominated(spec, budget, rng):
    f, y = rng.normal(size=2), rng.normal(size=2)
    T = operator(np.outer(y, f))
    found = summing.pi_lambda_mid(spec, T, 3, 2, budget)
    seed = np.zeros((2, 2))
    seed[0] = f / np.linalg.norm(f)
    xs = VectorSequence(T.domain, found.witness)
    mid = vector_norms.mid_norm(spec, xs, 2, budget, [seed])
    images = VectorSequence(T.codomain, T.apply(found.witness))
    lhs = vector_norms.strong_norm(spec, images)
    rhs = np.linalg.norm(f) * np.linalg.norm(y) * mid.value
    assert lhs <= rhs + 1e-9 * max(1.0, rhs)


def test_sequences_need_a_length(budget):
    with pytest.raises(DimensionError):
        summing.pi_lambda(L2, operator([[1]]), 0, budget)


# Ideal inequality #####################################################

def test_ideal_check_with_identities(budget, rng):
    oracle = NormOracle.parse('l2:2')
    I = OperatorMatrix.identity(oracle)
    T = operator(rng.normal(size=(2, 2)))
    checked = summing.ideal_witness_check(L2, I, T, I, 2, 2, budget)
    assert checked.passed
    assert [row['name'] for row in checked.rows] == ['ideal[0].R',
                                                     'ideal[0].S']


def test_ideal_check_with_scaled_outer_operator(budget, rng):
    oracle = NormOracle.parse('l2:2')
    R = OperatorMatrix.identity(oracle, scale=2)
    S = OperatorMatrix.identity(oracle)
    T = operator(rng.normal(size=(2, 2)))
    witnesses = [rng.normal(size=(2, 2)), rng.normal(size=(2, 2))]
    checked = summing.ideal_witness_check(L2, R, T, S, 2, 2, budget,
                                          witnesses)
    assert checked.passed
    assert len(checked.rows) == 4
    assert not checked.violations
