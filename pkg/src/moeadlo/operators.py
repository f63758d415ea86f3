"""Search operators mapping selected parents to offspring.

Every operator has a compiled kernel (``_name``) used by the optimizers and a
checked Python wrapper. Kernels document the exact order in which they draw
from the random stream, because the compiled engine and the Python engine
must consume the stream identically.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numba import njit

from .core import Bounds, ContractViolation, _clamp_inplace

# Cubic (before softmax) of the learned per-rank weights.
DEFAULT_COEFFS = (-0.111, 1.037, -1.291, 0.445)
DEFAULT_THETA = 0.5
DEFAULT_DIM_PROB = 0.1

WEIGHT_SCHEMES = ("lo", "random", "equal", "linear")


@dataclass(frozen=True)
class LoWeights:
    """Parameters of the linear operator.

    ``a..d`` are cubic coefficients over normalized rank, ``theta`` scales the
    Gaussian weight noise, ``dim_prob`` is the per-variable application
    probability and ``l`` the number of parents.
    """

    a: float = DEFAULT_COEFFS[0]
    b: float = DEFAULT_COEFFS[1]
    c: float = DEFAULT_COEFFS[2]
    d: float = DEFAULT_COEFFS[3]
    theta: float = DEFAULT_THETA
    dim_prob: float = DEFAULT_DIM_PROB
    l: int = 10

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("input size l must be at least 1")
        if not 0.0 <= self.dim_prob <= 1.0:
            raise ValueError("dim_prob must lie in [0, 1]")
        if self.theta < 0:
            raise ValueError("theta must be nonnegative")

    @property
    def coeffs(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def with_l(self, l: int) -> "LoWeights":
        return replace(self, l=l)

    def to_text(self) -> str:
        keys = ("a", "b", "c", "d", "theta", "dim_prob", "l")
        return "".join(f"{k} = {getattr(self, k)!r}\n" for k in keys)

    @classmethod
    def from_text(cls, text: str) -> "LoWeights":
        from .io import parse_keyvalue

        kv = parse_keyvalue(text)
        unknown = set(kv) - {"a", "b", "c", "d", "theta", "dim_prob", "l"}
        if unknown:
            raise ValueError(f"unknown operator keys: {sorted(unknown)}")
        args = {k: float(v) for k, v in kv.items() if k != "l"}
        if "l" in kv:
            args["l"] = int(kv["l"])
        return cls(**args)


@dataclass(frozen=True)
class OperatorConfig:
    """Knobs shared by the classical and linear operators."""

    sigma1: float = 1.0
    sigma2: float = 0.9
    eta_c: float = 20.0
    eta_m: float = 20.0
    F: float = 0.5
    CR: float = 1.0
    s: int = 1
    per_var_prob: float | None = None  # None means 1/d

    def __post_init__(self):
        for name in ("sigma1", "sigma2", "CR"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if not 0.4 <= self.F <= 1.0:
            raise ValueError(f"DE scale factor F must lie in [0.4, 1], got {self.F}")
        if self.eta_c <= 0 or self.eta_m <= 0:
            raise ValueError("distribution indices must be positive")
        if self.s < 1:
            raise ValueError("offspring count s must be at least 1")
        if self.per_var_prob is not None and not 0.0 <= self.per_var_prob <= 1.0:
            raise ValueError("per_var_prob must lie in [0, 1]")


# ---------------------------------------------------------------------------
# weight vectors


def rank_polynomial(coeffs, l: int) -> np.ndarray:
    """Cubic evaluated at normalized ranks ``i/l`` for ``i = 1..l``."""
    a, b, c, d = coeffs
    r = np.arange(1, l + 1, dtype=float) / l
    return a * r**3 + b * r**2 + c * r + d


def softmax(v: np.ndarray) -> np.ndarray:
    e = np.exp(v - np.max(v))
    return e / e.sum()


def lo_base_weights(l: int, coeffs=DEFAULT_COEFFS) -> np.ndarray:
    """Per-rank weights of the linear operator; rank 1 (best) comes first."""
    if l < 1:
        raise ValueError("input size l must be at least 1")
    return softmax(rank_polynomial(coeffs, l))


def ablation_weights(kind: str, l: int, rng: np.random.Generator | None = None) -> np.ndarray:
    """Naive weight vectors: ``random`` (fresh per call), ``equal`` or ``linear``."""
    if l < 1:
        raise ValueError("input size l must be at least 1")
    kind = kind.lower()
    if kind == "equal":
        return np.full(l, 1.0 / l)
    if kind == "linear":
        # arithmetic sequence summing to 1, step 2/l^2; l=10 gives 0.19 .. 0.01
        return (2 * (l - np.arange(l)) - 1) / l**2
    if kind == "random":
        if rng is None:
            raise ValueError("random weights need a random stream")
        out = np.empty(l)
        _random_simplex(rng, out)
        return out
    raise ValueError(f"unknown weight scheme {kind!r}; expected random, equal or linear")


@njit(cache=True)
def _random_simplex(rng, out):
    total = 0.0
    for i in range(out.shape[0]):
        out[i] = rng.random()
        total += out[i]
    if total > 0.0:
        for i in range(out.shape[0]):
            out[i] /= total
    else:
        for i in range(out.shape[0]):
            out[i] = 1.0 / out.shape[0]


# ---------------------------------------------------------------------------
# kernels


@njit(cache=True)
def _lo_child(parents, w, theta, dim_prob, incumbent, lower, upper, rng, out):
    # draws: l standard normals (one per parent), then one uniform per variable
    l, d = parents.shape
    noisy = np.empty(l)
    for i in range(l):
        noisy[i] = w[i] + theta * rng.standard_normal()
    for k in range(d):
        if rng.random() < dim_prob:
            acc = 0.0
            for i in range(l):
                acc += noisy[i] * parents[i, k]
            out[k] = acc
        else:
            out[k] = incumbent[k]
    _clamp_inplace(out, lower, upper)


@njit(cache=True)
def _sbx_pair(p1, p2, eta, lower, upper, rng, c1, c2):
    # draws per variable: spread u, sign flip, skip
    for k in range(p1.shape[0]):
        u = rng.random()
        if u <= 0.5:
            beta = (2.0 * u) ** (1.0 / (eta + 1.0))
        else:
            beta = (2.0 - 2.0 * u) ** (-1.0 / (eta + 1.0))
        if rng.random() < 0.5:
            beta = -beta
        if rng.random() < 0.5:
            beta = 1.0
        mean = 0.5 * (p1[k] + p2[k])
        half = 0.5 * (p1[k] - p2[k])
        c1[k] = mean + beta * half
        c2[k] = mean - beta * half
    _clamp_inplace(c1, lower, upper)
    _clamp_inplace(c2, lower, upper)


@njit(cache=True)
def _polynomial_mutation(x, per_var_prob, eta, lower, upper, rng):
    # draws per variable: site; if mutated, one more for the spread
    mpow = 1.0 / (eta + 1.0)
    for k in range(x.shape[0]):
        if rng.random() < per_var_prob:
            mu = rng.random()
            lo = lower[k]
            hi = upper[k]
            span = hi - lo
            if span <= 0.0:
                continue
            y = x[k]
            if mu <= 0.5:
                xy = 1.0 - (y - lo) / span
                val = 2.0 * mu + (1.0 - 2.0 * mu) * xy ** (eta + 1.0)
                y = y + span * (val**mpow - 1.0)
            else:
                xy = 1.0 - (hi - y) / span
                val = 2.0 * (1.0 - mu) + 2.0 * (mu - 0.5) * xy ** (eta + 1.0)
                y = y + span * (1.0 - val**mpow)
            x[k] = y
    _clamp_inplace(x, lower, upper)


@njit(cache=True)
def _de_rand_1(xi, xj, xk, F, CR, incumbent, lower, upper, rng, out):
    # draws: forced variable index, then one uniform per variable
    d = xi.shape[0]
    jrand = rng.integers(0, d)
    for k in range(d):
        if rng.random() < CR or k == jrand:
            out[k] = xi[k] + F * (xj[k] - xk[k])
        else:
            out[k] = incumbent[k]
    _clamp_inplace(out, lower, upper)


# ---------------------------------------------------------------------------
# public wrappers


def _check_dims(*vectors):
    d = vectors[0].shape[-1]
    for v in vectors:
        if v.shape[-1] != d:
            raise ContractViolation("parents and bounds must have equal dimension")


def lo_offspring(
    parents_sorted,
    incumbent,
    w: LoWeights,
    rng: np.random.Generator,
    bounds: Bounds,
    base_weights: np.ndarray | None = None,
) -> np.ndarray:
    """One linear-operator offspring.

    ``parents_sorted`` is an ``(l, d)`` array, best parent first. Each weight
    gets one Gaussian perturbation shared by all variables; each variable is
    recombined with probability ``w.dim_prob`` and otherwise copied from
    ``incumbent``.
    """
    P = np.ascontiguousarray(parents_sorted, dtype=float)
    inc = np.ascontiguousarray(incumbent, dtype=float)
    if P.ndim != 2:
        raise ContractViolation("parents must be a 2-D array")
    _check_dims(P, inc, bounds.lower)
    base = lo_base_weights(len(P), w.coeffs) if base_weights is None else np.asarray(base_weights, dtype=float)
    if base.shape != (len(P),):
        raise ContractViolation("one weight per parent required")
    out = np.empty(P.shape[1])
    _lo_child(P, base, float(w.theta), float(w.dim_prob), inc, bounds.lower, bounds.upper, rng, out)
    return out


def sbx_crossover(p1, p2, eta_c: float, rng: np.random.Generator, bounds: Bounds) -> np.ndarray:
    """Simulated binary crossover; returns the first child.

    Each variable is recombined with probability 0.5.
    """
    p1 = np.ascontiguousarray(p1, dtype=float)
    p2 = np.ascontiguousarray(p2, dtype=float)
    _check_dims(p1, p2, bounds.lower)
    c1 = np.empty_like(p1)
    c2 = np.empty_like(p1)
    _sbx_pair(p1, p2, float(eta_c), bounds.lower, bounds.upper, rng, c1, c2)
    return c1


def polynomial_mutation(x, per_var_prob: float, eta_m: float, rng: np.random.Generator, bounds: Bounds) -> np.ndarray:
    if not 0.0 <= per_var_prob <= 1.0:
        raise ValueError("per_var_prob must lie in [0, 1]")
    y = np.array(x, dtype=float)
    _check_dims(y, bounds.lower)
    _polynomial_mutation(y, float(per_var_prob), float(eta_m), bounds.lower, bounds.upper, rng)
    return y


def de_rand_1(xi, xj, xk, F: float, rng: np.random.Generator, bounds: Bounds, crossover_rate: float = 1.0, incumbent=None) -> np.ndarray:
    """``xi + F (xj - xk)`` with binomial crossover against ``incumbent``.

    ``incumbent`` defaults to ``xi``. One variable always takes the mutant.
    """
    xi = np.ascontiguousarray(xi, dtype=float)
    xj = np.ascontiguousarray(xj, dtype=float)
    xk = np.ascontiguousarray(xk, dtype=float)
    inc = xi if incumbent is None else np.ascontiguousarray(incumbent, dtype=float)
    _check_dims(xi, xj, xk, inc, bounds.lower)
    out = np.empty_like(xi)
    _de_rand_1(xi, xj, xk, float(F), float(crossover_rate), inc, bounds.lower, bounds.upper, rng, out)
    return out
