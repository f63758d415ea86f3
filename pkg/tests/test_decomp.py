from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moeadlo.core import ContractViolation, Individual, Population
from moeadlo.decomp import (
    ExternalArchive,
    das_dennis,
    divisions_for,
    neighborhoods,
    tchebycheff,
    update_archive,
    update_neighbors,
    update_reference,
)

from oracles import nondominated_brute


@pytest.mark.parametrize("m,H", [(2, 1), (2, 4), (2, 199), (3, 1), (3, 12), (3, 23), (4, 6), (5, 3)])
def test_das_dennis_count_and_sum(m, H):
    W = das_dennis(m, H)
    assert len(W) == comb(H + m - 1, m - 1)
    assert np.all(np.abs(W.sum(axis=1) - 1) <= 1e-12)
    assert np.all(W >= 0)
    assert len(np.unique(W.round(12), axis=0)) == len(W)


def test_das_dennis_rejects_bad_args():
    with pytest.raises(ValueError):
        das_dennis(1, 3)
    with pytest.raises(ValueError):
        das_dennis(2, 0)


def test_divisions_for():
    assert divisions_for(200, 2) == 199
    assert divisions_for(300, 3) == 23
    with pytest.raises(ValueError, match="nearest sizes"):
        divisions_for(200, 3)


def test_neighborhood_tie_rule():
    W = das_dennis(2, 4)
    B = neighborhoods(W, 2)
    # middle vector (index 2) is equidistant from 1 and 3; lower index wins
    assert B[2].tolist() == [2, 1]


def test_neighborhood_extremes():
    W = das_dennis(2, 9)
    full = neighborhoods(W, 10)
    assert all(sorted(row) == list(range(10)) for row in full)
    own = neighborhoods(W, 1)
    assert own[:, 0].tolist() == list(range(10))
    with pytest.raises(ValueError):
        neighborhoods(W, 11)


def test_neighborhood_matches_brute_force():
    W = das_dennis(3, 12)
    B = neighborhoods(W, 9)
    K = np.rint(W * 12).astype(int)  # exact integer lattice coordinates
    for i in range(len(W)):
        d = [(int(((K[i] - K[j]) ** 2).sum()), j) for j in range(len(W))]
        assert B[i].tolist() == [j for _, j in sorted(d)[:9]]


def test_tchebycheff_examples():
    assert tchebycheff((3, 7), (1, 0), (0, 0)) == 3
    assert tchebycheff((2, 4), (0.5, 0.5), (1, 1)) == 1.5
    assert tchebycheff((2, 4), (0.3, 0.7), (2, 4)) == 0
    with pytest.raises(ContractViolation):
        tchebycheff((1, 2), (1,), (0, 0))


@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3), st.floats(-100, 100))
def test_tchebycheff_shift_invariant(f, c):
    lam = np.array([0.2, 0.5, 0.3])
    z = np.array([-1.0, 0.5, 0.0])
    a = tchebycheff(f, lam, z)
    b = tchebycheff(np.array(f) + c, lam, z + c)
    assert abs(a - b) <= 1e-9 * (1 + abs(c))


def test_update_reference():
    assert update_reference((1, 1), (0.5, 2)).tolist() == [0.5, 1]
    assert update_reference((1, 1), (2, 3)).tolist() == [1, 1]
    assert update_reference((np.inf, np.inf), (3, 4)).tolist() == [3, 4]


def test_reference_is_lower_bound():
    rng = np.random.default_rng(0)
    F = rng.normal(size=(200, 3))
    z = np.full(3, np.inf)
    for k, f in enumerate(F):
        z = update_reference(z, f)
        assert np.all(z <= F[: k + 1].min(axis=0))


def _pop(F):
    F = np.asarray(F, dtype=float)
    return Population(F.copy(), F.copy(), np.arange(len(F), dtype=np.int64))


def test_update_neighbors_hand_trace():
    # three subproblems, z = 0. The offspring (1, 1) scores
    # 0.5 on subproblem 0 (weights 0.5/0.5), 0.9 on 1 and 0.9 on 2.
    W = np.array([[0.5, 0.5], [0.9, 0.1], [0.1, 0.9]])
    B = np.array([[0, 1, 2], [1, 0, 2], [2, 0, 1]])
    pop = _pop([[1.0, 0.0], [1.0, 0.0], [0.0, 2.0]])
    # incumbents: max(0.5, 0) = 0.5 tie; max(0.9, 0) = 0.9 tie; max(0, 1.8) = 1.8 worse
    child = Individual(np.array([1.0, 1.0]), np.array([1.0, 1.0]), 7)
    update_neighbors(pop, child, 0, B, W, np.zeros(2))
    assert pop.evaluation_index.tolist() == [7, 7, 7]
    assert pop.F.tolist() == [[1, 1], [1, 1], [1, 1]]


def test_update_neighbors_all_better_and_all_worse():
    W = das_dennis(2, 4)
    B = neighborhoods(W, 5)
    pop = _pop(np.full((5, 2), 5.0))
    update_neighbors(pop, Individual(np.zeros(2), np.zeros(2), 1), 0, B, W, np.zeros(2))
    assert np.all(pop.evaluation_index == 1)
    before = pop.F.copy()
    update_neighbors(pop, Individual(np.zeros(2), np.full(2, 9.0), 2), 0, B, W, np.zeros(2))
    assert np.array_equal(pop.F, before)


def test_update_neighbors_never_increases_aggregation():
    rng = np.random.default_rng(1)
    W = das_dennis(2, 19)
    B = neighborhoods(W, 5)
    pop = _pop(rng.uniform(0, 3, size=(20, 2)))
    z = np.zeros(2)
    for t in range(300):
        before = np.array([tchebycheff(pop.F[j], W[j], z) for j in range(20)])
        f = rng.uniform(0, 3, size=2)
        update_neighbors(pop, Individual(f, f, t), int(rng.integers(20)), B, W, z)
        after = np.array([tchebycheff(pop.F[j], W[j], z) for j in range(20)])
        assert np.all(after <= before)


def test_archive_examples():
    ep = ExternalArchive(1, 2)
    update_archive(ep, Individual(np.zeros(1), np.array([1.0, 1.0])))
    assert len(ep) == 1
    assert not ep.add(np.zeros(1), np.array([2.0, 2.0]))
    assert len(ep) == 1
    ep.add(np.zeros(1), np.array([0.5, 2.0]))
    ep.add(np.zeros(1), np.array([2.0, 0.5]))
    assert len(ep) == 3
    assert ep.add(np.zeros(1), np.array([0.4, 0.9]))
    assert sorted(map(tuple, ep.F)) == [(0.4, 0.9), (2.0, 0.5)]
    assert not ep.add(np.zeros(1), np.array([0.4, 0.9]))  # duplicate


@pytest.mark.parametrize("m", [2, 3])
@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_archive_nondominated_after_every_insert(m, seed):
    rng = np.random.default_rng(seed)
    ep = ExternalArchive(2, m, initial_size=4)
    seen = []
    for k in range(60):
        f = rng.integers(0, 8, size=m).astype(float)
        ep.add(rng.random(2), f, k)
        seen.append(f)
        F = ep.F
        assert nondominated_brute(F).all()
        assert len(np.unique(F, axis=0)) == len(F)
    # exactly the nondominated distinct vectors of everything inserted
    S = np.unique(np.array(seen), axis=0)
    expect = S[nondominated_brute(S)]
    assert sorted(map(tuple, ep.F)) == sorted(map(tuple, expect))


def test_archive_capacity_keeps_extremes():
    ep = ExternalArchive(1, 2, capacity=5)
    t = np.linspace(0, 1, 40)
    for k, v in enumerate(t):
        ep.add(np.zeros(1), np.array([v, 1 - v]), k)
    assert len(ep) == 5
    F = ep.F
    assert F[:, 0].min() == 0.0 and F[:, 0].max() == 1.0
    assert nondominated_brute(F).all()


def test_archive_members_are_sorted_for_two_objectives():
    rng = np.random.default_rng(2)
    ep = ExternalArchive(1, 2)
    for k in range(300):
        t = rng.random()
        ep.add(np.array([t]), np.array([t, 1 - t**0.5]), k + 1)
    F = ep.members.F
    assert np.all(np.diff(F[:, 0]) > 0)
    assert np.array_equal(ep.members.X[:, 0], F[:, 0])
