"""Domain primitives: bounds, individuals, dominance and the randomness contract.

Populations are stored structure-of-arrays style (an ``(n, d)`` decision
matrix next to an ``(n, m)`` objective matrix); :class:`Individual` is the
value type handed across module boundaries.

All objectives are minimized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit


class ContractViolation(ValueError):
    """Raised when arguments break a documented precondition (shape, length)."""


@dataclass(frozen=True)
class Bounds:
    """Box bounds of the decision space."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.ascontiguousarray(self.lower, dtype=float)
        upper = np.ascontiguousarray(self.upper, dtype=float)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ContractViolation("lower and upper must be 1-D arrays of equal length")
        if np.any(lower > upper):
            raise ContractViolation("lower bound exceeds upper bound")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, low: float, high: float, d: int) -> "Bounds":
        return cls(np.full(d, float(low)), np.full(d, float(high)))

    @property
    def d(self) -> int:
        return self.lower.shape[0]


@dataclass(frozen=True)
class Individual:
    """Decision vector together with its objective vector.

    ``evaluation_index`` is the 1-based global evaluation that produced ``f``.
    """

    x: np.ndarray
    f: np.ndarray
    evaluation_index: int = 0

    def __post_init__(self):
        if self.evaluation_index < 0:
            raise ContractViolation("evaluation_index must be nonnegative")


@dataclass
class Population:
    """Rows of decision and objective vectors plus their evaluation indices."""

    X: np.ndarray
    F: np.ndarray
    evaluation_index: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.evaluation_index is None:
            self.evaluation_index = np.zeros(len(self.X), dtype=np.int64)

    def __len__(self) -> int:
        return len(self.X)

    def __getitem__(self, i: int) -> Individual:
        return Individual(self.X[i].copy(), self.F[i].copy(), int(self.evaluation_index[i]))

    def individuals(self) -> list[Individual]:
        return [self[i] for i in range(len(self))]


def make_rng(seed: int | np.random.SeedSequence | None) -> np.random.Generator:
    """Create the run-level random stream.

    PCG64 from an explicit seed is platform independent. The same Generator
    object is shared with compiled kernels, which draw from the identical
    bit stream.
    """
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(None if seed is None else int(seed) & (2**64 - 1)))


def spawn(rng: np.random.Generator, n: int) -> list[np.random.Generator]:
    """Split ``rng`` into ``n`` independent child streams."""
    return list(rng.spawn(n))


@njit(cache=True)
def _dominates(a, b):
    better = False
    for j in range(a.shape[0]):
        if a[j] > b[j]:
            return False
        if a[j] < b[j]:
            better = True
    return better


def dominates(a, b) -> bool:
    """Return True iff ``a`` Pareto-dominates ``b`` (minimization)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ContractViolation(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(_dominates(a, b))


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of the rows of ``F`` that no other row dominates."""
    F = np.asarray(F, dtype=float)
    if len(F) == 0:
        return np.zeros(0, dtype=bool)
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dominated = np.any(le & lt, axis=0)
    return ~dominated


@njit(cache=True)
def _clamp_inplace(x, lower, upper):
    for k in range(x.shape[0]):
        if x[k] < lower[k]:
            x[k] = lower[k]
        elif x[k] > upper[k]:
            x[k] = upper[k]


def clamp_to_bounds(x, bounds: Bounds) -> np.ndarray:
    """Clip each component into ``[lower[k], upper[k]]``."""
    x = np.array(x, dtype=float)
    if x.shape != bounds.lower.shape:
        raise ContractViolation(f"expected {bounds.d} variables, got {x.shape}")
    _clamp_inplace(x, bounds.lower, bounds.upper)
    return x


@njit(cache=True)
def _random_point(lower, upper, rng, out):
    for k in range(lower.shape[0]):
        out[k] = lower[k] + rng.random() * (upper[k] - lower[k])


def random_individual(bounds: Bounds, rng: np.random.Generator) -> np.ndarray:
    """Draw a decision vector uniformly from the box."""
    out = np.empty(bounds.d)
    _random_point(bounds.lower, bounds.upper, rng, out)
    return out
