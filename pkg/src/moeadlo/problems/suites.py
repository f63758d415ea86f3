"""Problem specifications, Pareto-front samplers and the name registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Callable

import numpy as np

from ..core import Bounds, ContractViolation, nondominated_mask
from ..decomp import das_dennis, lattice_size
from . import kernels as K

DEFAULT_PF_POINTS = 10_000

# f1 intervals of the five disconnected ZDT3 front pieces
ZDT3_REGIONS = (
    (0.0, 0.0830015349),
    (0.1822287280, 0.2577623634),
    (0.4093136748, 0.4538821041),
    (0.6183967944, 0.6525117038),
    (0.8233317983, 0.8518328654),
)
ZDT6_F1_MIN = 0.2807753191


class ProblemNotFound(KeyError):
    def __init__(self, name: str, valid):
        self.name = name
        self.valid = sorted(valid)
        super().__init__(f"unknown problem {name!r}; valid names: {', '.join(self.valid)}")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class ProblemSpec:
    """A box-bounded benchmark problem with a known (or stored) Pareto front."""

    name: str
    m: int
    d: int
    bounds: Bounds
    code: int | None
    pf_sampler: Callable[[int], np.ndarray] = field(repr=False)
    evaluator: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    def evaluate(self, x) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=float)
        if x.shape != (self.d,):
            raise ContractViolation(f"{self.name} expects {self.d} variables, got shape {x.shape}")
        if self.evaluator is not None:
            return np.asarray(self.evaluator(x), dtype=float)
        out = np.empty(self.m)
        K.evaluate_code(self.code, x, out)
        return out

    def evaluate_batch(self, X) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.d:
            raise ContractViolation(f"{self.name} expects rows of {self.d} variables")
        if self.evaluator is not None:
            return np.array([self.evaluate(x) for x in X]).reshape(len(X), self.m)
        return K.evaluate_batch(self.code, X, self.m)

    def sample_pf(self, n: int = DEFAULT_PF_POINTS) -> np.ndarray:
        if n < 1:
            raise ValueError("need at least one front point")
        return self.pf_sampler(n)

    @cached_property
    def reference_front(self) -> np.ndarray:
        return self.sample_pf(DEFAULT_PF_POINTS)

    @property
    def ideal(self) -> np.ndarray:
        return self.reference_front.min(axis=0)

    @property
    def nadir(self) -> np.ndarray:
        return self.reference_front.max(axis=0)


# ---------------------------------------------------------------------------
# front samplers


def _curve(fn):
    def sample(n):
        t = np.linspace(0.0, 1.0, n)
        return np.column_stack([t, fn(t)])

    return sample


def _zdt3_front(n: int) -> np.ndarray:
    lengths = np.array([b - a for a, b in ZDT3_REGIONS])
    s = np.linspace(0.0, lengths.sum(), n)
    edges = np.concatenate([[0.0], np.cumsum(lengths)])
    seg = np.clip(np.searchsorted(edges, s, side="right") - 1, 0, len(lengths) - 1)
    starts = np.array([a for a, _ in ZDT3_REGIONS])
    f1 = starts[seg] + (s - edges[seg])
    f2 = 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)
    P = np.column_stack([f1, f2])
    return P[_nd_2d(P)]


def _nd_2d(P: np.ndarray) -> np.ndarray:
    """Nondominated mask for a 2-objective set (sort and sweep)."""
    order = np.lexsort((P[:, 1], P[:, 0]))
    mask = np.zeros(len(P), dtype=bool)
    best = np.inf
    for i in order:
        if P[i, 1] < best:
            mask[i] = True
            best = P[i, 1]
    return mask


def _zdt6_front(n: int) -> np.ndarray:
    f1 = np.linspace(ZDT6_F1_MIN, 1.0, n)
    return np.column_stack([f1, 1.0 - f1**2])


def _uf5_front(n: int) -> np.ndarray:
    # discrete front of 2N+1 points with N = 10, independent of n
    f1 = np.arange(21) / 20.0
    return np.column_stack([f1, 1.0 - f1])


def _uf6_front(n: int) -> np.ndarray:
    rest = max(n - 1, 2)
    k1 = rest // 2
    f1 = np.concatenate([[0.0], np.linspace(0.25, 0.5, k1), np.linspace(0.75, 1.0, rest - k1)])
    return np.column_stack([f1, 1.0 - f1])


def _simplex_lattice(n: int) -> np.ndarray:
    H = 1
    while lattice_size(3, H) < n:
        H += 1
    return das_dennis(3, H)


def _uf8_front(n: int) -> np.ndarray:
    W = _simplex_lattice(n)
    return W / np.linalg.norm(W, axis=1, keepdims=True)


def _uf9_front(n: int) -> np.ndarray:
    W = _simplex_lattice(n)
    f1, f3 = W[:, 0], W[:, 2]
    keep = (f1 <= (1.0 - f3) / 4.0 + 1e-12) | (f1 >= 3.0 * (1.0 - f3) / 4.0 - 1e-12)
    return W[keep]


def _stored_front(name: str):
    def sample(n):
        data = resources.files("moeadlo.problems").joinpath("data", f"{name}.txt").read_text()
        P = np.loadtxt(data.splitlines(), ndmin=2)
        return P

    return sample


# ---------------------------------------------------------------------------
# registry


def _zdt(name, code, d, tail_low, tail_high, sampler):
    lower = np.full(d, float(tail_low))
    upper = np.full(d, float(tail_high))
    lower[0], upper[0] = 0.0, 1.0
    return ProblemSpec(name, 2, d, Bounds(lower, upper), code, sampler)


def _uf(name, code, d, m, tail_low, tail_high, sampler):
    lower = np.full(d, float(tail_low))
    upper = np.full(d, float(tail_high))
    head = 1 if m == 2 else 2
    lower[:head], upper[:head] = 0.0, 1.0
    return ProblemSpec(name, m, d, Bounds(lower, upper), code, sampler)


def make_problem(name: str, d: int | None = None) -> ProblemSpec:
    """Build a registered problem, optionally with a non-default variable count.

    The ZDT and UF problems default to 30 variables; ``zdt4`` and ``zdt6``
    take their canonical 10-variable form with ``d=10``. RE problems have a
    fixed dimension.
    """
    key = name.lower()
    zdt = {
        "zdt1": (K.ZDT1, 0.0, 1.0, _curve(lambda t: 1 - np.sqrt(t))),
        "zdt2": (K.ZDT2, 0.0, 1.0, _curve(lambda t: 1 - t**2)),
        "zdt3": (K.ZDT3, 0.0, 1.0, _zdt3_front),
        "zdt4": (K.ZDT4, -5.0, 5.0, _curve(lambda t: 1 - np.sqrt(t))),
        "zdt6": (K.ZDT6, 0.0, 1.0, _zdt6_front),
    }
    uf = {
        "uf1": (K.UF1, 2, -1.0, 1.0, _curve(lambda t: 1 - np.sqrt(t))),
        "uf2": (K.UF2, 2, -1.0, 1.0, _curve(lambda t: 1 - np.sqrt(t))),
        "uf3": (K.UF3, 2, 0.0, 1.0, _curve(lambda t: 1 - np.sqrt(t))),
        "uf4": (K.UF4, 2, -2.0, 2.0, _curve(lambda t: 1 - t**2)),
        "uf5": (K.UF5, 2, -1.0, 1.0, _uf5_front),
        "uf6": (K.UF6, 2, -1.0, 1.0, _uf6_front),
        "uf7": (K.UF7, 2, -1.0, 1.0, _curve(lambda t: 1 - t)),
        "uf8": (K.UF8, 3, -2.0, 2.0, _uf8_front),
        "uf9": (K.UF9, 3, -2.0, 2.0, _uf9_front),
    }
    re = {
        "re21": (K.RE21, [1.0, np.sqrt(2.0), np.sqrt(2.0), 1.0], [3.0, 3.0, 3.0, 3.0]),
        "re22": (K.RE22, [0.2, 0.0, 0.0], [15.0, 20.0, 40.0]),
        "re23": (K.RE23, [1.0, 1.0, 10.0, 10.0], [100.0, 100.0, 200.0, 240.0]),
        "re24": (K.RE24, [0.5, 4.0], [4.0, 50.0]),
        "re25": (K.RE25, [1.0, 0.6, 0.09], [70.0, 3.0, 0.5]),
    }
    if key in zdt:
        code, lo, hi, sampler = zdt[key]
        return _zdt(key, code, 30 if d is None else d, lo, hi, sampler)
    if key in uf:
        code, m, lo, hi, sampler = uf[key]
        dd = 30 if d is None else d
        if dd < (3 if m == 2 else 5):
            raise ValueError(f"{key} needs more variables than {dd}")
        return _uf(key, code, dd, m, lo, hi, sampler)
    if key in re:
        code, lower, upper = re[key]
        if d is not None and d != len(lower):
            raise ValueError(f"{key} has a fixed dimension of {len(lower)}")
        return ProblemSpec(key, 2, len(lower), Bounds(np.array(lower), np.array(upper)), code, _stored_front(key))
    raise ProblemNotFound(name, list(zdt) + list(uf) + list(re))


PROBLEM_NAMES = (
    "zdt1", "zdt2", "zdt3", "zdt4", "zdt6",
    "uf1", "uf2", "uf3", "uf4", "uf5", "uf6", "uf7", "uf8", "uf9",
    "re21", "re22", "re23", "re24", "re25",
)


def registry() -> dict[str, ProblemSpec]:
    return {name: make_problem(name) for name in PROBLEM_NAMES}


def get_problem(name: str, d: int | None = None) -> ProblemSpec:
    return make_problem(name, d)


def nondominated(P: np.ndarray) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    if P.shape[1] == 2:
        return P[_nd_2d(P)]
    return P[nondominated_mask(P)]
