"""Hypervolume and inverted generational distance."""

from __future__ import annotations

import logging
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

logger = logging.getLogger(__name__)

REF_FACTOR = 1.1


@dataclass(frozen=True)
class IndicatorConfig:
    """How to compute HV and IGD for one problem.

    With ``normalize`` the objectives are mapped by ``(f - ideal)/(nadir -
    ideal)`` and the reference point is ``1.1`` in every objective. When
    ``scale_by_reference`` is also set the volume is divided by ``1.1**m``
    (the default for ZDT/UF); the RE preset leaves it unscaled.

    ``hv_reference`` may be an explicit point or ``"auto-1.1"``.
    """

    hv_reference: object = "auto-1.1"
    normalize: bool = True
    scale_by_reference: bool = True
    ideal: np.ndarray | None = None
    nadir: np.ndarray | None = None
    igd_reference: np.ndarray | None = None
    mc_samples: int = 100_000

    def __post_init__(self):
        if self.mc_samples < 10_000:
            raise ValueError("mc_samples must be at least 1e4")

    @classmethod
    def for_problem(cls, problem, convention: str | None = None, **kw) -> "IndicatorConfig":
        """Default config: platform-style normalized HV, except RE problems
        which use the unscaled variant."""
        front = problem.reference_front
        if convention is None:
            convention = "re" if problem.name.startswith("re") else "normalized"
        if convention not in ("normalized", "re", "raw"):
            raise ValueError(f"unknown HV convention {convention!r}")
        return cls(
            normalize=convention != "raw",
            scale_by_reference=convention == "normalized",
            ideal=front.min(axis=0),
            nadir=front.max(axis=0),
            igd_reference=front,
            **kw,
        )


class HvResult(NamedTuple):
    value: float
    stderr: float
    method: str


def _as_points(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        return P.reshape(0, P.shape[-1] if P.ndim == 2 else 0)
    return np.atleast_2d(P)


def hv_2d(points, ref) -> float:
    """Exact 2-D hypervolume by a sorted sweep."""
    P = _as_points(points)
    ref = np.asarray(ref, dtype=float)
    if len(P) == 0:
        return 0.0
    P = P[np.all(P < ref, axis=1)]
    if len(P) == 0:
        return 0.0
    P = P[np.lexsort((P[:, 1], P[:, 0]))]
    xs, ys = [], []
    best = np.inf
    for x, y in P:
        if y < best:
            xs.append(x)
            ys.append(y)
            best = y
    xs.append(ref[0])
    area = 0.0
    for i in range(len(ys)):
        area += (xs[i + 1] - xs[i]) * (ref[1] - ys[i])
    return float(area)


class _Staircase:
    """2-D nondominated front with its dominated area kept up to date."""

    def __init__(self, r1: float, r2: float):
        self.r1 = r1
        self.r2 = r2
        self.xs: list[float] = []
        self.ys: list[float] = []
        self.area = 0.0

    def insert(self, px: float, py: float) -> None:
        xs, ys, r1, r2 = self.xs, self.ys, self.r1, self.r2
        n = len(xs)
        pos = bisect_left(xs, px)
        if pos > 0 and ys[pos - 1] <= py:
            return
        if pos < n and xs[pos] == px and ys[pos] <= py:
            return
        j = pos
        while j < n and ys[j] >= py:
            j += 1
        right = xs[j] if j < n else r1
        first = xs[pos] if pos < n else r1
        old = (first - px) * (r2 - ys[pos - 1]) if pos > 0 else 0.0
        for i in range(pos, j):
            nxt = xs[i + 1] if i + 1 < j else right
            old += (nxt - xs[i]) * (r2 - ys[i])
        self.area += (right - px) * (r2 - py) - old
        del xs[pos:j]
        del ys[pos:j]
        xs.insert(pos, px)
        ys.insert(pos, py)


def hv_3d(points, ref) -> float:
    """Exact 3-D hypervolume by sweeping along the third objective."""
    P = _as_points(points)
    ref = np.asarray(ref, dtype=float)
    if len(P) == 0:
        return 0.0
    P = P[np.all(P < ref, axis=1)]
    if len(P) == 0:
        return 0.0
    P = P[np.argsort(P[:, 2], kind="stable")]
    stair = _Staircase(ref[0], ref[1])
    volume = 0.0
    prev_z = P[0, 2]
    for x, y, z in P:
        volume += stair.area * (z - prev_z)
        prev_z = z
        stair.insert(x, y)
    volume += stair.area * (ref[2] - prev_z)
    return float(volume)


def hv_monte_carlo(points, ref, n_samples: int, rng: np.random.Generator, chunk: int = 20_000) -> tuple[float, float]:
    """Monte Carlo hypervolume estimate and its standard error."""
    P = _as_points(points)
    ref = np.asarray(ref, dtype=float)
    if len(P) == 0:
        return 0.0, 0.0
    P = P[np.all(P < ref, axis=1)]
    if len(P) == 0:
        return 0.0, 0.0
    low = P.min(axis=0)
    box = float(np.prod(ref - low))
    hits = 0
    done = 0
    while done < n_samples:
        k = min(chunk, n_samples - done)
        S = low + rng.random((k, len(ref))) * (ref - low)
        dominated = np.zeros(k, dtype=bool)
        for p in P:
            dominated |= np.all(S >= p, axis=1)
        hits += int(dominated.sum())
        done += k
    frac = hits / n_samples
    return box * frac, box * np.sqrt(frac * (1 - frac) / n_samples)


def _prepare(points, cfg: IndicatorConfig):
    P = _as_points(points)
    m = P.shape[1] if P.ndim == 2 and P.shape[1] else (len(cfg.ideal) if cfg.ideal is not None else 0)
    if cfg.normalize:
        if cfg.ideal is None or cfg.nadir is None:
            raise ValueError("normalized HV needs ideal and nadir points")
        ideal = np.asarray(cfg.ideal, dtype=float)
        nadir = np.asarray(cfg.nadir, dtype=float)
        span = np.where(nadir > ideal, nadir - ideal, 1.0)
        if len(P):
            P = (P - ideal) / span
        ref = np.full(m, REF_FACTOR)
        if not (isinstance(cfg.hv_reference, str) and cfg.hv_reference == "auto-1.1"):
            ref = (np.asarray(cfg.hv_reference, dtype=float) - ideal) / span
    else:
        if isinstance(cfg.hv_reference, str):
            if cfg.hv_reference != "auto-1.1":
                raise ValueError(f"unknown reference spec {cfg.hv_reference!r}")
            if cfg.ideal is None or cfg.nadir is None:
                raise ValueError("auto reference needs ideal and nadir points")
            ideal = np.asarray(cfg.ideal, dtype=float)
            nadir = np.asarray(cfg.nadir, dtype=float)
            ref = ideal + REF_FACTOR * (nadir - ideal)
        else:
            ref = np.asarray(cfg.hv_reference, dtype=float)
    return P, ref


def hv_details(points, cfg: IndicatorConfig | None = None, ref=None, rng: np.random.Generator | None = None) -> HvResult:
    """Hypervolume with method and standard error.

    Pass either ``cfg`` or an explicit raw-space reference point ``ref``.
    Exact for two and three objectives, Monte Carlo otherwise.
    """
    if cfg is None:
        if ref is None:
            raise ValueError("need an IndicatorConfig or a reference point")
        cfg = IndicatorConfig(hv_reference=np.asarray(ref, dtype=float), normalize=False, scale_by_reference=False)
    P, r = _prepare(points, cfg)
    if len(P) == 0:
        return HvResult(0.0, 0.0, "empty")
    if P.shape[1] != len(r):
        raise ValueError(f"points have {P.shape[1]} objectives, reference has {len(r)}")
    m = len(r)
    scale = REF_FACTOR**m if (cfg.normalize and cfg.scale_by_reference) else 1.0
    if m == 2:
        return HvResult(hv_2d(P, r) / scale, 0.0, "exact-2d")
    if m == 3:
        return HvResult(hv_3d(P, r) / scale, 0.0, "exact-3d")
    if rng is None:
        rng = np.random.default_rng(0)
    v, se = hv_monte_carlo(P, r, cfg.mc_samples, rng)
    return HvResult(v / scale, se / scale, "monte-carlo")


def hv(points, cfg: IndicatorConfig | None = None, ref=None, rng: np.random.Generator | None = None) -> float:
    return hv_details(points, cfg, ref, rng).value


def _distance(a, r) -> float:
    return float(np.sqrt(np.sum((a - r) ** 2)))


def igd_bruteforce(approx, reference) -> float:
    A = _as_points(approx)
    R = _as_points(reference)
    return math.fsum(min(_distance(a, r) for a in A) for r in R) / len(R)


def igd(approx, reference) -> float:
    """Mean distance from each reference point to its nearest approximation point.

    A k-d tree proposes a few nearest candidates; their distances are then
    recomputed exactly as in :func:`igd_bruteforce`, so both agree bit for bit.
    """
    A = _as_points(approx)
    R = _as_points(reference)
    if len(A) == 0:
        raise ValueError("IGD is undefined for an empty approximation set")
    if len(R) == 0:
        raise ValueError("IGD needs a nonempty reference set")
    if A.shape[1] != R.shape[1]:
        raise ValueError("approximation and reference sets differ in objective count")
    k = min(len(A), 4)
    _, idx = cKDTree(A).query(R, k=k)
    idx = idx.reshape(len(R), k)
    d = np.sqrt(np.sum((A[idx] - R[:, None, :]) ** 2, axis=2)).min(axis=1)
    return math.fsum(d.tolist()) / len(R)


def hv_trajectory(snapshots, cfg: IndicatorConfig, checkpoints) -> list[tuple[int, float]]:
    """HV of the latest population snapshot at or before each checkpoint.

    ``snapshots`` is a sequence of ``(evaluations, F)`` pairs in increasing
    evaluation order. Checkpoints past the last snapshot are skipped.
    HV need not be monotone along the trajectory.
    """
    snaps = list(snapshots)
    if not snaps:
        return []
    evals = [e for e, _ in snaps]
    out = []
    last = -1
    for c in checkpoints:
        if c < last:
            raise ValueError("checkpoints must be nondecreasing")
        last = c
        if c > evals[-1]:
            logger.warning("checkpoint %d is beyond the run's %d evaluations; omitted", c, evals[-1])
            continue
        k = bisect_left(evals, c)
        if k == len(evals) or evals[k] != c:
            k -= 1
        if k < 0:
            logger.warning("no snapshot at or before checkpoint %d; omitted", c)
            continue
        out.append((int(c), hv(snaps[k][1], cfg)))
    return out
