"""Wilcoxon rank-sum marks for result tables."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import mannwhitneyu

ALPHA = 0.05


def rank_sum_pvalue(a, b) -> float:
    """Two-sided rank-sum p-value.

    Exact for small samples without ties, otherwise the normal approximation
    with tie correction. Samples that are all equal give 1.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) == 0 or len(b) == 0:
        raise ValueError("rank-sum test needs two nonempty samples")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        return 1.0
    return float(mannwhitneyu(a, b, alternative="two-sided", method="auto").pvalue)


def significance_mark(sample, reference, higher_is_better: bool, alpha: float = ALPHA) -> str:
    """``+`` if ``sample`` is significantly better than ``reference``, ``-`` if worse, else ``=``."""
    if rank_sum_pvalue(sample, reference) >= alpha:
        return "="
    better = np.median(sample) > np.median(reference)
    if np.median(sample) == np.median(reference):
        better = np.mean(sample) > np.mean(reference)
    if not higher_is_better:
        better = not better
    return "+" if better else "-"


@dataclass
class StatRow:
    problem: str
    mean: dict = field(default_factory=dict)
    std: dict = field(default_factory=dict)
    marks: dict = field(default_factory=dict)
    count: dict = field(default_factory=dict)
    best: str | None = None


def stat_row(problem: str, samples: dict, reference: str, higher_is_better: bool, alpha: float = ALPHA) -> StatRow:
    """Summaries for one problem; ``samples`` maps algorithm label to values.

    Labels with no samples are kept with NaN statistics so gaps show up.
    """
    row = StatRow(problem)
    for label, vals in samples.items():
        v = np.asarray([x for x in vals if np.isfinite(x)], dtype=float)
        row.count[label] = len(v)
        row.mean[label] = float(v.mean()) if len(v) else float("nan")
        row.std[label] = float(v.std(ddof=1)) if len(v) > 1 else (0.0 if len(v) else float("nan"))
    ref = np.asarray([x for x in samples.get(reference, []) if np.isfinite(x)], dtype=float)
    for label, vals in samples.items():
        if label == reference:
            continue
        v = np.asarray([x for x in vals if np.isfinite(x)], dtype=float)
        row.marks[label] = significance_mark(v, ref, higher_is_better, alpha) if len(v) and len(ref) else "?"
    finite = {k: m for k, m in row.mean.items() if np.isfinite(m)}
    if finite:
        row.best = (max if higher_is_better else min)(finite, key=finite.get)
    return row


def tally(rows, labels, reference: str) -> dict:
    """Count ``+``/``-``/``=`` per non-reference column."""
    out = {}
    for label in labels:
        if label == reference:
            continue
        marks = [r.marks.get(label) for r in rows]
        out[label] = (marks.count("+"), marks.count("-"), marks.count("="))
    return out
