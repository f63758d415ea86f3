"""Decomposition machinery: weight lattices, neighborhoods, Chebyshev
aggregation, the reference point and the external archive."""

from __future__ import annotations

from math import comb

import numpy as np
from numba import njit

from .core import ContractViolation, Individual, Population


def lattice_size(m: int, H: int) -> int:
    return comb(H + m - 1, m - 1)


def das_dennis(m: int, H: int) -> np.ndarray:
    """Simplex-lattice weight vectors with step ``1/H``.

    Rows are in lexicographic order and sum to 1. The count is
    ``C(H+m-1, m-1)``.
    """
    if m < 2:
        raise ValueError(f"need at least 2 objectives, got m={m}")
    if H < 1:
        raise ValueError(f"need at least 1 division, got H={H}")
    rows = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], H, m)
    W = np.asarray(rows, dtype=float) / H
    # last component absorbs rounding so every row sums to 1
    W[:, -1] = 1.0 - W[:, :-1].sum(axis=1)
    return W


def divisions_for(N: int, m: int) -> int:
    """Return the H whose lattice has exactly ``N`` vectors."""
    H = 1
    while lattice_size(m, H) < N:
        H += 1
    if lattice_size(m, H) != N:
        raise ValueError(
            f"no Das-Dennis lattice has exactly N={N} vectors for m={m} "
            f"(nearest sizes {lattice_size(m, H - 1)} and {lattice_size(m, H)})"
        )
    return H


def neighborhoods(weights: np.ndarray, T: int) -> np.ndarray:
    """Indices of the ``T`` nearest weight vectors for every weight vector.

    Row ``i`` is ordered by distance; the owning index comes first and
    equidistant candidates are broken by lower index.
    """
    W = np.asarray(weights, dtype=float)
    N = len(W)
    if T > N:
        raise ValueError(f"neighborhood size T={T} exceeds the number of subproblems N={N}")
    if T < 1:
        raise ValueError("neighborhood size must be positive")
    dist = np.sqrt(((W[:, None, :] - W[None, :, :]) ** 2).sum(axis=2))
    # lattice vectors carry rounding noise; equal-up-to-rounding distances are ties
    dist = np.round(dist, 12)
    order = np.argsort(dist, axis=1, kind="stable")
    B = order[:, :T].copy()
    # guarantee self is present and first even with duplicate weight vectors
    for i in range(N):
        if B[i, 0] != i:
            row = [i] + [j for j in order[i] if j != i][: T - 1]
            B[i] = row
    return B.astype(np.int64)


@njit(cache=True)
def _tchebycheff(f, lam, z):
    best = -np.inf
    for j in range(f.shape[0]):
        v = lam[j] * (f[j] - z[j])
        if v > best:
            best = v
    return best


def tchebycheff(f, lam, z) -> float:
    """Chebyshev aggregation ``max_j lam_j * (f_j - z_j)``; zero weights are kept."""
    f = np.asarray(f, dtype=float)
    lam = np.asarray(lam, dtype=float)
    z = np.asarray(z, dtype=float)
    if not f.shape == lam.shape == z.shape:
        raise ContractViolation("f, lambda and z must have equal length")
    return float(_tchebycheff(f, lam, z))


@njit(cache=True)
def _update_reference(z, f):
    for j in range(z.shape[0]):
        if f[j] < z[j]:
            z[j] = f[j]


def update_reference(z, f) -> np.ndarray:
    """Componentwise minimum of ``z`` and ``f``."""
    z = np.array(z, dtype=float)
    f = np.asarray(f, dtype=float)
    if z.shape != f.shape:
        raise ContractViolation("z and f must have equal length")
    _update_reference(z, f)
    return z


@njit(cache=True)
def _update_neighbors(X, F, E, xo, fo, eo, Bi, W, z):
    replaced = 0
    for t in range(Bi.shape[0]):
        j = Bi[t]
        if _tchebycheff(fo, W[j], z) <= _tchebycheff(F[j], W[j], z):
            X[j, :] = xo
            F[j, :] = fo
            E[j] = eo
            replaced += 1
    return replaced


def update_neighbors(population: Population, offspring: Individual, i: int, B: np.ndarray, W: np.ndarray, z) -> Population:
    """Replace every neighbor of subproblem ``i`` that the offspring ties or beats.

    The population is updated in place and returned. There is no cap on
    the number of replacements.
    """
    _update_neighbors(
        population.X,
        population.F,
        population.evaluation_index,
        np.asarray(offspring.x, dtype=float),
        np.asarray(offspring.f, dtype=float),
        offspring.evaluation_index,
        np.asarray(B[i], dtype=np.int64),
        np.asarray(W, dtype=float),
        np.asarray(z, dtype=float),
    )
    return population


# ---------------------------------------------------------------------------
# External archive
#
# Storage is slot based: AX/AF/AE hold rows, ``order`` lists live slots
# (sorted by f1 when m == 2), ``free`` is a stack of recycled slots and
# ``meta`` = [live count, free count, next fresh slot].


@njit(cache=True)
def crowding_distance(F):
    n, m = F.shape
    cd = np.zeros(n)
    if n == 0:
        return cd
    for j in range(m):
        idx = np.argsort(F[:, j], kind="mergesort")
        lo = F[idx[0], j]
        hi = F[idx[n - 1], j]
        cd[idx[0]] = np.inf
        cd[idx[n - 1]] = np.inf
        if hi > lo:
            for k in range(1, n - 1):
                cd[idx[k]] += (F[idx[k + 1], j] - F[idx[k - 1], j]) / (hi - lo)
    return cd


@njit(cache=True)
def _grow(AX, AF, AE, order, free):
    cap = AX.shape[0] * 2
    nAX = np.empty((cap, AX.shape[1]))
    nAF = np.empty((cap, AF.shape[1]))
    nAE = np.zeros(cap, dtype=np.int64)
    norder = np.empty(cap, dtype=np.int64)
    nfree = np.empty(cap, dtype=np.int64)
    old = AX.shape[0]
    nAX[:old] = AX
    nAF[:old] = AF
    nAE[:old] = AE
    norder[:old] = order
    nfree[:old] = free
    return nAX, nAF, nAE, norder, nfree


@njit(cache=True)
def _alloc_slot(free, meta):
    if meta[1] > 0:
        meta[1] -= 1
        return free[meta[1]]
    slot = meta[2]
    meta[2] += 1
    return slot


@njit(cache=True)
def _release_slot(free, meta, slot):
    free[meta[1]] = slot
    meta[1] += 1


@njit(cache=True)
def _prune_one(AF, order, free, meta):
    n = meta[0]
    m = AF.shape[1]
    sub = np.empty((n, m))
    for t in range(n):
        sub[t] = AF[order[t]]
    cd = crowding_distance(sub)
    worst = 0
    for t in range(1, n):
        if cd[t] < cd[worst]:
            worst = t
    _release_slot(free, meta, order[worst])
    for t in range(worst, n - 1):
        order[t] = order[t + 1]
    meta[0] = n - 1


@njit(cache=True)
def _archive_insert(AX, AF, AE, order, free, meta, x, f, e, capacity):
    """Insert ``(x, f)`` if no member dominates or duplicates it.

    Returns the (possibly reallocated) arrays and whether insertion happened.
    """
    n = meta[0]
    m = f.shape[0]
    if m == 2:
        lo = 0
        hi = n
        while lo < hi:
            mid = (lo + hi) // 2
            if AF[order[mid], 0] < f[0]:
                lo = mid + 1
            else:
                hi = mid
        pos = lo
        if pos > 0 and AF[order[pos - 1], 1] <= f[1]:
            return AX, AF, AE, order, free, False
        if pos < n and AF[order[pos], 0] == f[0] and AF[order[pos], 1] <= f[1]:
            return AX, AF, AE, order, free, False
        j = pos
        while j < n and AF[order[j], 1] >= f[1]:
            _release_slot(free, meta, order[j])
            j += 1
        removed = j - pos
        if meta[1] == 0 and meta[2] >= AX.shape[0]:
            AX, AF, AE, order, free = _grow(AX, AF, AE, order, free)
        slot = _alloc_slot(free, meta)
        AX[slot] = x
        AF[slot] = f
        AE[slot] = e
        if removed == 0:
            for t in range(n, pos, -1):
                order[t] = order[t - 1]
        elif removed > 1:
            for t in range(pos + 1, n - removed + 1):
                order[t] = order[t + removed - 1]
        order[pos] = slot
        meta[0] = n - removed + 1
    else:
        for t in range(n):
            g = AF[order[t]]
            weakly = True
            for k in range(m):
                if g[k] > f[k]:
                    weakly = False
                    break
            if weakly:
                return AX, AF, AE, order, free, False
        keep = 0
        for t in range(n):
            g = AF[order[t]]
            dominated = True
            strictly = False
            for k in range(m):
                if f[k] > g[k]:
                    dominated = False
                    break
                if f[k] < g[k]:
                    strictly = True
            if dominated and strictly:
                _release_slot(free, meta, order[t])
            else:
                order[keep] = order[t]
                keep += 1
        if meta[1] == 0 and meta[2] >= AX.shape[0]:
            AX, AF, AE, order, free = _grow(AX, AF, AE, order, free)
        slot = _alloc_slot(free, meta)
        AX[slot] = x
        AF[slot] = f
        AE[slot] = e
        order[keep] = slot
        meta[0] = keep + 1
    if capacity > 0 and meta[0] > capacity:
        _prune_one(AF, order, free, meta)
    return AX, AF, AE, order, free, True


class ExternalArchive:
    """Mutually nondominated set of every solution found so far.

    ``capacity=None`` keeps the archive unbounded; otherwise the member with
    the smallest crowding distance is evicted on overflow (extreme members
    are never evicted).
    """

    def __init__(self, d: int, m: int, capacity: int | None = None, initial_size: int = 256):
        self.d = d
        self.m = m
        self.capacity = capacity
        size = max(4, initial_size)
        self._AX = np.empty((size, d))
        self._AF = np.empty((size, m))
        self._AE = np.zeros(size, dtype=np.int64)
        self._order = np.empty(size, dtype=np.int64)
        self._free = np.empty(size, dtype=np.int64)
        self._meta = np.zeros(3, dtype=np.int64)

    def __len__(self) -> int:
        return int(self._meta[0])

    def add(self, x, f, evaluation_index: int = 0) -> bool:
        x = np.asarray(x, dtype=float)
        f = np.asarray(f, dtype=float)
        if f.shape != (self.m,) or x.shape != (self.d,):
            raise ContractViolation("offspring shape does not match archive")
        cap = 0 if self.capacity is None else int(self.capacity)
        self._AX, self._AF, self._AE, self._order, self._free, ok = _archive_insert(
            self._AX, self._AF, self._AE, self._order, self._free, self._meta, x, f, int(evaluation_index), cap
        )
        return bool(ok)

    @property
    def members(self) -> Population:
        idx = self._order[: len(self)]
        return Population(self._AX[idx].copy(), self._AF[idx].copy(), self._AE[idx].copy())

    @property
    def F(self) -> np.ndarray:
        return self._AF[self._order[: len(self)]].copy()

    def state(self):
        """Raw storage, for handing to compiled kernels."""
        return self._AX, self._AF, self._AE, self._order, self._free, self._meta

    def load_state(self, AX, AF, AE, order, free, meta) -> None:
        self._AX, self._AF, self._AE, self._order, self._free, self._meta = AX, AF, AE, order, free, meta


def update_archive(ep: ExternalArchive, offspring: Individual) -> ExternalArchive:
    """Insert ``offspring`` into ``ep`` under the nondominance rule; returns ``ep``."""
    ep.add(offspring.x, offspring.f, offspring.evaluation_index)
    return ep
