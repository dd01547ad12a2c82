import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SX, SZ
from tempeur.bounds import max_overlap_c, steering_witness
from tempeur.errors import ContractViolation
from tempeur.infotheory import conditional_entropy, mutual_information
from tempeur.lhsmodel import (
    LhsEnsemble,
    LhsMember,
    averaging_slack,
    lhs_conditional_decomposition,
    lhs_joint,
    member_mu_slacks,
    random_lhs_ensemble,
    theorem_sweep,
)
from tempeur.quantum import DensityMatrix, Observable, fourier_pair, measure_distribution, rotor_observables, sequential_joint

X, Z = Observable(SX), Observable(SZ)
UP = DensityMatrix(np.diag([1.0, 0.0]))
DOWN = DensityMatrix(np.diag([0.0, 1.0]))


def test_single_member_product_joint():
    e = LhsEnsemble((LhsMember(1.0, [1, 0], [0.5, 0.5], DensityMatrix.maximally_mixed(2)),))
    j = lhs_joint(e, "x", X)
    np.testing.assert_allclose(j.p, [[0.5, 0.5], [0, 0]], atol=1e-15)


def test_matching_deterministic_members_correlate_perfectly():
    e = LhsEnsemble((LhsMember(0.5, [1, 0], [1, 0], UP), LhsMember(0.5, [0, 1], [0, 1], DOWN)))
    j = lhs_joint(e, "z", Z)
    # Z outcomes ordered (-1, +1); prior 0 goes with the +1 state
    np.testing.assert_allclose(j.p, [[0, 0.5], [0.5, 0]], atol=1e-15)
    assert conditional_entropy(j) == pytest.approx(0, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(1, 8), dim=st.integers(2, 4))
def test_prior_marginal_is_weighted_priors(seed, k, dim):
    e = random_lhs_ensemble(dim, k, seed)
    later = Observable(np.diag(np.arange(dim, dtype=float)))
    for ctx in "xz":
        j = lhs_joint(e, ctx, later)
        expected = sum(m.weight * m.prior(ctx) for m in e.members)
        np.testing.assert_allclose(j.marginal_a(), expected, atol=1e-12)


def test_decomposition_trivial_cases():
    e = random_lhs_ensemble(2, 1, 3)
    np.testing.assert_allclose(lhs_conditional_decomposition(e, 0), [1.0])
    prior = [0.3, 0.7]
    flat = LhsEnsemble(tuple(LhsMember(0.25, prior, prior, UP) for _ in range(4)))
    np.testing.assert_allclose(lhs_conditional_decomposition(flat, 1), [0.25] * 4, atol=1e-15)


def test_decomposition_rejects_impossible_outcome():
    e = LhsEnsemble((LhsMember(1.0, [1, 0], [1, 0], UP),))
    with pytest.raises(ContractViolation):
        lhs_conditional_decomposition(e, 1)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(1, 8))
def test_decomposition_reconstructs_conditional(seed, k):
    e = random_lhs_ensemble(3, k, seed)
    later, _ = fourier_pair(3)
    j = lhs_joint(e, "x", later)
    for a in range(3):
        post = lhs_conditional_decomposition(e, a, "x")
        assert post.sum() == pytest.approx(1, abs=1e-12)
        mixed = sum(w * measure_distribution(m.hidden_state, later) for w, m in zip(post, e.members))
        np.testing.assert_allclose(mixed, j.p[a] / j.p[a].sum(), atol=1e-12)


def test_random_ensemble_reproducible():
    a = random_lhs_ensemble(3, 4, 99)
    b = random_lhs_ensemble(3, 4, 99)
    for ma, mb in zip(a.members, b.members):
        assert ma.weight == mb.weight
        assert np.array_equal(ma.prior_x, mb.prior_x)
        assert np.array_equal(ma.hidden_state.matrix, mb.hidden_state.matrix)
    assert random_lhs_ensemble(3, 4, 100).members[0].weight != a.members[0].weight


def test_single_member_carries_no_information():
    e = random_lhs_ensemble(2, 1, 5)
    assert mutual_information(lhs_joint(e, "x", X)) == pytest.approx(0, abs=1e-12)
    assert mutual_information(lhs_joint(e, "z", Z)) == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_generator_output_is_valid(seed):
    e = random_lhs_ensemble(2, 5, seed)
    assert abs(e.weights.sum() - 1) <= 1e-12
    for ctx, obs in (("x", X), ("z", Z)):
        j = lhs_joint(e, ctx, obs)
        assert j.p.min() >= 0 and abs(j.p.sum() - 1) < 1e-10


def test_ensemble_validation():
    with pytest.raises(ContractViolation):
        LhsEnsemble((LhsMember(0.5, [1, 0], [1, 0], UP),))
    with pytest.raises(ContractViolation):
        LhsMember(1.0, [0.5, 0.6], [1, 0], UP)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(1, 8), dim=st.integers(2, 3))
def test_proof_steps_hold(seed, k, dim):
    e = random_lhs_ensemble(dim, k, seed)
    x, z = fourier_pair(dim)
    assert member_mu_slacks(e, x, z).min() >= -1e-9
    assert averaging_slack(e, "x", x) >= -1e-9
    assert averaging_slack(e, "z", z) >= -1e-9


def test_theorem_sweep_qubit():
    summary = theorem_sweep(2, 300, X, Z, seed=7)
    assert summary.violations == 0
    assert summary.min_slack >= -1e-9
    assert summary.trials == 300


def test_x_eigenstate_ensemble():
    plus = DensityMatrix((np.eye(2) + SX) / 2)
    minus = DensityMatrix((np.eye(2) - SX) / 2)
    e = LhsEnsemble((LhsMember(0.5, [1, 0], [0.5, 0.5], plus), LhsMember(0.5, [0, 1], [0.5, 0.5], minus)))
    jx, jz = lhs_joint(e, "x", X), lhs_joint(e, "z", Z)
    assert conditional_entropy(jx) == pytest.approx(0, abs=1e-12)
    assert conditional_entropy(jz) >= 1 - 1e-12
    assert steering_witness(jx, jz, max_overlap_c(X, Z)).slack >= -1e-12


def test_quantum_memory_violates_where_lhs_cannot():
    x0, x, z0, z = (Observable(2 * o.matrix) for o in rotor_observables(1, 0.0, 0.0))
    rho = DensityMatrix.maximally_mixed(2)
    r = steering_witness(sequential_joint(rho, x0, x), sequential_joint(rho, z0, z), 1 / math.sqrt(2))
    assert not r.satisfied
