import numpy as np
import pytest

from moeadlo.core import Bounds, ContractViolation
from moeadlo.operators import (
    DEFAULT_COEFFS,
    LoWeights,
    OperatorConfig,
    ablation_weights,
    de_rand_1,
    lo_base_weights,
    lo_offspring,
    polynomial_mutation,
    rank_polynomial,
    sbx_crossover,
)

import oracles as O


def test_rank_one_polynomial_value():
    # -0.111 * 0.001 + 1.037 * 0.01 - 1.291 * 0.1 + 0.445
    assert rank_polynomial(DEFAULT_COEFFS, 10)[0] == pytest.approx(0.326159, abs=1e-12)


def test_lo_base_weights_shape():
    assert lo_base_weights(1).tolist() == [1.0]
    w = lo_base_weights(10)
    assert w[0] > w[9] > w[4]
    p = rank_polynomial(DEFAULT_COEFFS, 10)
    e = np.exp(p)
    assert np.allclose(w, e / e.sum(), atol=1e-15)
    for l in range(1, 101):
        w = lo_base_weights(l)
        assert abs(w.sum() - 1) < 1e-12 and np.all(w > 0)
    with pytest.raises(ValueError):
        lo_base_weights(0)


def test_ablation_weights():
    assert np.allclose(ablation_weights("equal", 10), 0.1)
    lin = ablation_weights("linear", 10)
    assert np.allclose(lin, np.arange(0.19, 0.0, -0.02))
    assert lin.sum() == pytest.approx(1.0)
    r = ablation_weights("random", 4, np.random.default_rng(0))
    assert np.all(r >= 0) and r.sum() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ablation_weights("random", 4)
    with pytest.raises(ValueError):
        ablation_weights("cubic", 4)


def test_lo_fixed_point_and_copy():
    b = Bounds.uniform(-5, 5, 6)
    xbar = np.linspace(-1, 1, 6)
    P = np.tile(xbar, (10, 1))
    w = LoWeights(theta=0.0, dim_prob=1.0)
    assert np.allclose(lo_offspring(P, np.zeros(6), w, np.random.default_rng(0), b), xbar, atol=1e-14)
    inc = np.arange(6.0) / 10
    child = lo_offspring(np.random.default_rng(1).random((10, 6)), inc, LoWeights(dim_prob=0.0), np.random.default_rng(2), b)
    assert np.array_equal(child, inc)


def test_lo_two_parents_weighted_sum():
    b = Bounds.uniform(0, 1, 2)
    w = LoWeights(theta=0.0, dim_prob=1.0, l=2)
    child = lo_offspring(np.array([[0.0, 0.0], [1.0, 1.0]]), np.zeros(2), w, np.random.default_rng(0), b)
    p = np.array([np.polyval(DEFAULT_COEFFS, r) for r in (0.5, 1.0)])
    w2 = np.exp(p[1]) / np.exp(p).sum()
    assert np.allclose(child, [w2, w2], atol=1e-15)


def test_lo_matches_hand_oracle():
    rng = np.random.default_rng(5)
    for _ in range(100):
        d = int(rng.integers(2, 12))
        b = Bounds(rng.uniform(-2, 0, d), rng.uniform(0.5, 2, d))
        P = rng.uniform(-2, 2, (10, d))
        inc = rng.uniform(-1, 1, d)
        w = LoWeights()
        seed = int(rng.integers(1 << 30))
        got = lo_offspring(P, inc, w, np.random.default_rng(seed), b)
        want = O.lo_child(P, lo_base_weights(10), 0.5, 0.1, inc, b.lower, b.upper, np.random.default_rng(seed))
        assert np.allclose(got, want, atol=1e-12, rtol=0)


def test_sbx_matches_hand_oracle():
    rng = np.random.default_rng(6)
    for _ in range(100):
        d = int(rng.integers(1, 15))
        b = Bounds.uniform(-1, 1, d)
        p1, p2 = rng.uniform(-1, 1, (2, d))
        seed = int(rng.integers(1 << 30))
        got = sbx_crossover(p1, p2, 20.0, np.random.default_rng(seed), b)
        want = O.sbx_first_child(p1, p2, 20.0, b.lower, b.upper, np.random.default_rng(seed))
        assert np.allclose(got, want, atol=1e-12, rtol=0)


def test_de_matches_hand_oracle():
    rng = np.random.default_rng(7)
    for _ in range(100):
        d = int(rng.integers(1, 15))
        b = Bounds.uniform(-1, 1, d)
        xi, xj, xk, inc = rng.uniform(-1, 1, (4, d))
        CR = float(rng.random())
        seed = int(rng.integers(1 << 30))
        got = de_rand_1(xi, xj, xk, 0.5, np.random.default_rng(seed), b, CR, inc)
        want = O.de_rand_1(xi, xj, xk, 0.5, CR, inc, b.lower, b.upper, np.random.default_rng(seed))
        assert np.allclose(got, want, atol=1e-12, rtol=0)


def test_sbx_identical_parents_and_reproducible():
    b = Bounds.uniform(0, 1, 5)
    p = np.array([0.1, 0.2, 0.3, 0.4, 0.5])
    assert np.allclose(sbx_crossover(p, p, 20, np.random.default_rng(0), b), p)
    q = p[::-1].copy()
    assert np.array_equal(sbx_crossover(p, q, 20, np.random.default_rng(3), b), sbx_crossover(p, q, 20, np.random.default_rng(3), b))


def test_de_examples():
    b = Bounds.uniform(-1, 1, 2)
    rng = np.random.default_rng(0)
    assert np.allclose(de_rand_1([0, 0], [1, 0], [0, 1], 0.5, rng, b), [0.5, -0.5])
    xi = np.array([0.2, -0.3])
    assert np.allclose(de_rand_1(xi, [0.7, 0.7], [0.7, 0.7], 0.5, rng, b), xi)


def test_mutation_examples():
    b = Bounds.uniform(0, 1, 4)
    x = np.array([0.1, 0.5, 0.9, 0.0])
    assert np.array_equal(polynomial_mutation(x, 0.0, 20, np.random.default_rng(0), b), x)
    assert np.array_equal(polynomial_mutation(x, 1.0, 20, np.random.default_rng(4), b), polynomial_mutation(x, 1.0, 20, np.random.default_rng(4), b))
    with pytest.raises(ValueError):
        polynomial_mutation(x, 1.5, 20, np.random.default_rng(0), b)


def test_all_operators_respect_bounds_fuzz():
    # 25,000 rounds of four operators: 1e5 fuzzed calls
    rng = np.random.default_rng(11)
    d = 5
    lower = np.array([-1.0, 0.0, 0.0, -5.0, 2.0])
    upper = np.array([1.0, 1.0, 0.0, 5.0, 3.0])
    b = Bounds(lower, upper)
    lo = LoWeights(theta=2.0, dim_prob=1.0)
    for _ in range(25_000):
        blk = rng.uniform(-10, 10, (10, d))
        inner = np.clip(blk, lower, upper)
        for v in (
            sbx_crossover(inner[0], inner[1], 20, rng, b),
            polynomial_mutation(inner[2], 1.0, 20, rng, b),
            de_rand_1(inner[3], blk[4], blk[5], 1.0, rng, b, 1.0),
            lo_offspring(blk, inner[6], lo, rng, b),
        ):
            assert np.all(v >= lower) and np.all(v <= upper)


def test_dimension_mismatch():
    b = Bounds.uniform(0, 1, 3)
    with pytest.raises(ContractViolation):
        lo_offspring(np.zeros((4, 2)), np.zeros(2), LoWeights(l=4), np.random.default_rng(0), b)
    with pytest.raises(ContractViolation):
        sbx_crossover(np.zeros(3), np.zeros(2), 20, np.random.default_rng(0), b)


def test_config_validation_and_text_roundtrip():
    with pytest.raises(ValueError):
        OperatorConfig(sigma2=1.5)
    with pytest.raises(ValueError):
        OperatorConfig(F=0.1)
    with pytest.raises(ValueError):
        LoWeights(dim_prob=2)
    w = LoWeights(a=0.1, b=-0.2, c=1 / 3, d=0.7, theta=0.25, dim_prob=0.2, l=12)
    assert LoWeights.from_text(w.to_text()) == w
    with pytest.raises(ValueError):
        LoWeights.from_text("zeta = 1\n")
