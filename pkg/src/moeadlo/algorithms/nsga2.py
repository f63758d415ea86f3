"""Generational NSGA-II baseline."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..core import Population, _random_point, make_rng
from ..decomp import ExternalArchive, crowding_distance
from ..operators import _polynomial_mutation, _sbx_pair
from .moead import EvaluationError, RunResult, snapshot_checkpoints


@dataclass(frozen=True)
class Nsga2Config:
    N: int = 100
    N_max: int = 10_000
    pc: float = 0.9
    pm: float | None = None  # None means 1/d
    eta_c: float = 20.0
    eta_m: float = 20.0
    seed: int = 0
    track_archive: bool = True
    snapshot_fraction: float = 0.05

    def __post_init__(self):
        if self.N < 2 or self.N % 2:
            raise ValueError("NSGA-II needs an even population size of at least 2")
        if self.N_max < 0:
            raise ValueError("N_max must be nonnegative")


@njit(cache=True)
def _fast_nondominated_rank(F):
    n, m = F.shape
    rank = np.zeros(n, dtype=np.int64)
    count = np.zeros(n, dtype=np.int64)
    dominated = np.zeros((n, n), dtype=np.bool_)
    for p in range(n):
        for q in range(p + 1, n):
            better = False
            worse = False
            for k in range(m):
                if F[p, k] < F[q, k]:
                    better = True
                elif F[p, k] > F[q, k]:
                    worse = True
            if better and not worse:
                dominated[p, q] = True
                count[q] += 1
            elif worse and not better:
                dominated[q, p] = True
                count[p] += 1
    front = np.empty(n, dtype=np.int64)
    nf = 0
    for p in range(n):
        if count[p] == 0:
            front[nf] = p
            nf += 1
    level = 0
    nxt = np.empty(n, dtype=np.int64)
    while nf > 0:
        nn = 0
        for t in range(nf):
            p = front[t]
            rank[p] = level
            for q in range(n):
                if dominated[p, q]:
                    count[q] -= 1
                    if count[q] == 0:
                        nxt[nn] = q
                        nn += 1
        for t in range(nn):
            front[t] = nxt[t]
        nf = nn
        level += 1
    return rank


def fast_nondominated_sort(F) -> list[np.ndarray]:
    """Indices of each front, best first."""
    F = np.ascontiguousarray(F, dtype=float)
    if len(F) == 0:
        return []
    rank = _fast_nondominated_rank(F)
    return [np.flatnonzero(rank == r) for r in range(rank.max() + 1)]


def _survivors(F, N):
    rank = _fast_nondominated_rank(F)
    crowd = np.empty(len(F))
    chosen = []
    for r in range(rank.max() + 1):
        idx = np.flatnonzero(rank == r)
        cd = crowding_distance(np.ascontiguousarray(F[idx]))
        crowd[idx] = cd
        if len(chosen) + len(idx) <= N:
            chosen.extend(idx.tolist())
        else:
            order = np.argsort(-cd, kind="stable")
            chosen.extend(idx[order[: N - len(chosen)]].tolist())
        if len(chosen) == N:
            break
    chosen = np.array(chosen, dtype=np.int64)
    return chosen, rank[chosen], crowd[chosen]


@njit(cache=True)
def _offspring(X, rank, crowd, pc, pm, eta_c, eta_m, lower, upper, rng, n_children):
    N, d = X.shape
    C = np.empty((n_children, d))
    c2 = np.empty(d)
    k = 0
    while k < n_children:
        parents = np.empty(2, dtype=np.int64)
        for t in range(2):
            a = rng.integers(0, N)
            b = rng.integers(0, N)
            if rank[a] < rank[b] or (rank[a] == rank[b] and crowd[a] > crowd[b]):
                parents[t] = a
            elif rank[b] < rank[a] or (rank[a] == rank[b] and crowd[b] > crowd[a]):
                parents[t] = b
            else:
                parents[t] = a if rng.random() < 0.5 else b
        if rng.random() < pc:
            _sbx_pair(X[parents[0]], X[parents[1]], eta_c, lower, upper, rng, C[k], c2)
        else:
            C[k] = X[parents[0]]
            c2[:] = X[parents[1]]
        _polynomial_mutation(C[k], pm, eta_m, lower, upper, rng)
        k += 1
        if k < n_children:
            C[k] = c2
            _polynomial_mutation(C[k], pm, eta_m, lower, upper, rng)
            k += 1
    return C


def run_nsga2(cfg: Nsga2Config, problem) -> RunResult:
    """NSGA-II under an evaluation budget; the last generation may be truncated."""
    t0 = time.perf_counter()
    rng = make_rng(cfg.seed)
    N, d, m = cfg.N, problem.d, problem.m
    lower = np.ascontiguousarray(problem.bounds.lower, dtype=float)
    upper = np.ascontiguousarray(problem.bounds.upper, dtype=float)
    pm = cfg.pm if cfg.pm is not None else 1.0 / d
    X = np.empty((N, d))
    for j in range(N):
        _random_point(lower, upper, rng, X[j])
    F = _evaluate(problem, X, 0)
    E = np.arange(1, N + 1, dtype=np.int64)
    evals = N
    archive = ExternalArchive(d, m)
    if cfg.track_archive:
        for j in range(N):
            archive.add(X[j], F[j], j + 1)
    ck = snapshot_checkpoints(cfg.N_max, cfg.snapshot_fraction)
    snapshots = []
    nsnap = 0

    def snap():
        nonlocal nsnap
        hit = False
        while nsnap < len(ck) and evals >= ck[nsnap]:
            nsnap += 1
            hit = True
        if hit:
            snapshots.append((evals, F.copy()))

    snap()
    keep, rank, crowd = _survivors(F, N)
    while evals < cfg.N_max:
        n_children = min(N, cfg.N_max - evals)
        C = _offspring(X, rank, crowd, cfg.pc, pm, cfg.eta_c, cfg.eta_m, lower, upper, rng, n_children)
        FC = _evaluate(problem, C, evals)
        EC = np.arange(evals + 1, evals + 1 + n_children, dtype=np.int64)
        if cfg.track_archive:
            for j in range(n_children):
                archive.add(C[j], FC[j], int(EC[j]))
        evals += n_children
        XA = np.vstack([X, C])
        FA = np.vstack([F, FC])
        EA = np.concatenate([E, EC])
        keep, rank, crowd = _survivors(FA, N)
        X, F, E = XA[keep], np.ascontiguousarray(FA[keep]), EA[keep]
        snap()
    return RunResult(
        algorithm="nsga2",
        problem=problem.name,
        seed=cfg.seed,
        population=Population(X.copy(), F.copy(), E.copy()),
        archive=archive.members if cfg.track_archive else None,
        snapshots=snapshots,
        evaluations=evals,
        wall_time=time.perf_counter() - t0,
        weights=np.empty((0, m)),
        z=F.min(axis=0),
    )


def _evaluate(problem, X, offset):
    F = np.ascontiguousarray(problem.evaluate_batch(X))
    bad = ~np.all(np.isfinite(F), axis=1)
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        raise EvaluationError(X[j], F[j], offset + j + 1)
    return F
