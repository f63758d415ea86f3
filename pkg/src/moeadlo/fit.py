"""Distill an interaction log into the linear operator.

Each logged call contributes one sample per variable: the ``l`` parent
values of that variable (best parent first) and the matching value of the
designated offspring. A pooled least-squares fit without intercept gives
one weight per rank, a cubic over normalized rank smooths them, and the
residual spread gives the noise scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .llm.interaction import InteractionRecord
from .operators import DEFAULT_DIM_PROB, LoWeights, rank_polynomial


class SingularSystem(ValueError):
    def __init__(self, columns):
        self.columns = [int(c) for c in columns]
        super().__init__(f"design matrix is rank deficient; dependent rank columns: {self.columns}")


class RegressionSample(NamedTuple):
    s: np.ndarray
    r: float


@dataclass
class SampleSet:
    """Samples stacked row-wise: ``S[k]`` holds the inputs, ``r[k]`` the response."""

    S: np.ndarray
    r: np.ndarray
    call: np.ndarray  # index of the record each sample came from

    def __len__(self) -> int:
        return len(self.r)

    def __iter__(self):
        for k in range(len(self.r)):
            yield RegressionSample(self.S[k], float(self.r[k]))

    @property
    def l(self) -> int:
        return self.S.shape[1]


@dataclass
class FitResult:
    raw_weights: np.ndarray
    poly: tuple[float, float, float, float]
    theta: float
    sample_count: int
    residual_norm: float
    mode: str = "pooled"

    def operator(self, dim_prob: float = DEFAULT_DIM_PROB) -> LoWeights:
        a, b, c, d = self.poly
        return LoWeights(a=a, b=b, c=c, d=d, theta=self.theta, dim_prob=dim_prob, l=len(self.raw_weights))

    def report(self) -> str:
        l = len(self.raw_weights)
        lines = [
            f"samples: {self.sample_count}",
            f"fit: {self.mode}",
            f"residual_norm: {self.residual_norm:.6g}",
            f"theta: {self.theta:.6g}",
            "cubic (a r^3 + b r^2 + c r + d): " + ", ".join(f"{v:.6g}" for v in self.poly),
            "rank  r      raw_weight  cubic",
        ]
        smooth = rank_polynomial(self.poly, l)
        for i in range(l):
            lines.append(f"{i + 1:<5d} {(i + 1) / l:<6.3f} {self.raw_weights[i]:<11.6f} {smooth[i]:.6f}")
        return "\n".join(lines) + "\n"


def extract_samples(records: Sequence[InteractionRecord], offspring: str = "first") -> SampleSet:
    """Turn records into regression samples.

    ``offspring="first"`` uses the first parsed point of each call;
    ``"each"`` lets every parsed point contribute its own samples.
    """
    if offspring not in ("first", "each"):
        raise ValueError("offspring must be 'first' or 'each'")
    blocks_S, blocks_r, blocks_c = [], [], []
    l = None
    for n, rec in enumerate(records):
        P = np.asarray(rec.parents, dtype=float)
        if l is None:
            l = P.shape[0]
        elif P.shape[0] != l:
            raise ValueError(f"record {n} has {P.shape[0]} parents, earlier records have {l}")
        kids = rec.parsed_offspring[:1] if offspring == "first" else rec.parsed_offspring
        for child in kids:
            child = np.asarray(child, dtype=float)
            if child.shape != (P.shape[1],):
                raise ValueError(f"record {n}: offspring dimension does not match parents")
            blocks_S.append(P.T)
            blocks_r.append(child)
            blocks_c.append(np.full(P.shape[1], n))
    if not blocks_S:
        return SampleSet(np.empty((0, l or 0)), np.empty(0), np.empty(0, dtype=np.int64))
    S = np.vstack(blocks_S)
    r = np.concatenate(blocks_r)
    if not (np.all(np.isfinite(S)) and np.all(np.isfinite(r))):
        raise ValueError("samples must be finite")
    return SampleSet(S, r, np.concatenate(blocks_c).astype(np.int64))


def _check_rank(S: np.ndarray) -> None:
    _, R, piv = scipy.linalg.qr(S, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        raise SingularSystem(range(S.shape[1]))
    tol = max(S.shape) * np.finfo(float).eps * diag[0]
    rank = int(np.sum(diag > tol))
    if rank < S.shape[1]:
        raise SingularSystem(sorted(piv[rank:]))


def fit_linear(samples) -> np.ndarray:
    """Least-squares weights for ``r ~ S w`` with no intercept."""
    S, r = _arrays(samples)
    if len(r) < S.shape[1]:
        raise ValueError(f"need at least {S.shape[1]} samples, got {len(r)}")
    _check_rank(S)
    w, *_ = np.linalg.lstsq(S, r, rcond=None)
    return w


def fit_rank_polynomial(raw_weights, l: int | None = None) -> tuple[float, float, float, float]:
    """Cubic ``(a, b, c, d)`` through the weights at ranks ``i/l``."""
    w = np.asarray(raw_weights, dtype=float)
    l = len(w) if l is None else l
    if l < 4:
        raise ValueError("a cubic fit needs l >= 4")
    if len(w) != l:
        raise ValueError(f"expected {l} weights, got {len(w)}")
    r = np.arange(1, l + 1) / l
    a, b, c, d = np.polyfit(r, w, 3)
    return float(a), float(b), float(c), float(d)


def estimate_theta(samples, raw_weights) -> float:
    """Residual standard deviation over the grand mean of all inputs."""
    S, r = _arrays(samples)
    if len(r) == 0:
        raise ValueError("no samples")
    scale = float(np.mean(S))
    if scale == 0.0:
        raise ValueError("mean input value is zero; theta is undefined")
    resid = S @ np.asarray(raw_weights, dtype=float) - r
    return float(np.std(resid) / abs(scale))


def _arrays(samples) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(samples, SampleSet):
        return samples.S, samples.r
    items = list(samples)
    if not items:
        return np.empty((0, 0)), np.empty(0)
    return np.array([np.asarray(x.s, dtype=float) for x in items]), np.array([float(x.r) for x in items])


def fit_records(records, offspring: str = "first", per_call: bool = False) -> FitResult:
    samples = extract_samples(records, offspring)
    if len(samples) == 0:
        raise ValueError("no samples to fit")
    if per_call:
        ws = []
        for n in np.unique(samples.call):
            mask = samples.call == n
            ws.append(fit_linear(SampleSet(samples.S[mask], samples.r[mask], samples.call[mask])))
        w = np.mean(ws, axis=0)
    else:
        w = fit_linear(samples)
    poly = fit_rank_polynomial(w, samples.l)
    resid = samples.S @ w - samples.r
    return FitResult(
        raw_weights=w,
        poly=poly,
        theta=estimate_theta(samples, w),
        sample_count=len(samples),
        residual_norm=float(np.linalg.norm(resid)),
        mode="per-call average" if per_call else "pooled",
    )


def distill(records, dim_prob: float = DEFAULT_DIM_PROB, offspring: str = "first", per_call: bool = False, report_path=None) -> LoWeights:
    """Fit the operator and optionally write the text report."""
    result = fit_records(records, offspring=offspring, per_call=per_call)
    if report_path is not None:
        with open(report_path, "w", encoding="utf-8") as fh:
            fh.write(result.report())
    return result.operator(dim_prob)


def synthetic_records(
    n_records: int,
    d: int,
    weights: LoWeights,
    rng: np.random.Generator,
    residual_sd: float = 0.0,
    low: float = 0.0,
    high: float = 2.0,
) -> list[InteractionRecord]:
    """Log whose offspring are exact rank-cubic combinations of the parents.

    Uses the cubic values directly as weights and recombines every
    variable, so the fit can recover the coefficients exactly. Weight noise
    ``weights.theta`` is drawn per call; ``residual_sd`` adds independent
    noise per variable. Parents are uniform on ``[low, high]`` (mean 1 by default).
    """
    l = weights.l
    w = rank_polynomial(weights.coeffs, l)
    out = []
    for n in range(n_records):
        P = rng.uniform(low, high, size=(l, d))
        wn = w + weights.theta * rng.standard_normal(l) if weights.theta > 0 else w
        child = wn @ P
        if residual_sd > 0:
            child = child + residual_sd * rng.standard_normal(d)
        out.append(
            InteractionRecord(
                subproblem_index=n,
                parents=P,
                parent_values=np.arange(l, dtype=float),
                raw_response="",
                parsed_offspring=[child],
            )
        )
    return out
