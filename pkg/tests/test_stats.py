import numpy as np
import pytest

from moeadlo.stats import rank_sum_pvalue, significance_mark, stat_row, tally

from oracles import ranksum_exact


def test_matches_exact_enumeration_small_samples():
    rng = np.random.default_rng(0)
    for _ in range(60):
        n1, n2 = (int(v) for v in rng.integers(1, 9, size=2))
        a = rng.normal(size=n1)
        b = rng.normal(0.8, size=n2)
        assert rank_sum_pvalue(a, b) == pytest.approx(ranksum_exact(a, b), rel=1e-9, abs=1e-12)


def test_identical_samples():
    assert rank_sum_pvalue([1, 1, 1], [1, 1]) == 1.0
    assert significance_mark([0.5] * 10, [0.5] * 10, True) == "="
    with pytest.raises(ValueError):
        rank_sum_pvalue([], [1.0])


def test_marks_direction():
    lo = np.arange(10.0)
    hi = lo + 100
    assert significance_mark(hi, lo, higher_is_better=True) == "+"
    assert significance_mark(hi, lo, higher_is_better=False) == "-"
    assert significance_mark(lo, hi, higher_is_better=False) == "+"


def test_stat_row_and_tally():
    samples = {"A": [1.0, 1.1, 0.9, 1.05, 0.95], "B": [2.0, 2.1, 1.9, 2.05, 1.95], "C": [1.0, 1.1, 0.9, 1.05, float("nan")]}
    row = stat_row("p", samples, "A", higher_is_better=False)
    assert row.best == "A"
    assert row.marks == {"B": "-", "C": "="}
    assert row.count["C"] == 4
    assert row.std["A"] == pytest.approx(np.std(samples["A"], ddof=1))
    assert tally([row, row], ["A", "B", "C"], "A") == {"B": (0, 2, 0), "C": (0, 0, 2)}
    gap = stat_row("p", {"A": [1.0], "B": []}, "A", higher_is_better=True)
    assert gap.marks["B"] == "?" and np.isnan(gap.mean["B"])
