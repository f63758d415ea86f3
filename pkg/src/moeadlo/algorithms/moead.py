"""MOEA/D with pluggable reproduction: GA, DE, the linear operator or a language model.

Two engines drive the same compiled steps. The compiled loop runs the
numeric operators end to end; the Python loop is needed for the
language-model operator and for problems without a compiled evaluator.
Given the same seed and operator both engines consume the random stream
identically and produce the same run.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace

import numpy as np
from numba import njit

from ..core import Population, _clamp_inplace, _random_point, make_rng
from ..decomp import (
    ExternalArchive,
    _archive_insert,
    _tchebycheff,
    _update_neighbors,
    _update_reference,
    das_dennis,
    divisions_for,
    neighborhoods,
)
from ..llm.interaction import InteractionLog, InteractionRecord, OperatorFailure, generate_with_retry
from ..llm.prompt import PromptSpec
from ..operators import (
    WEIGHT_SCHEMES,
    LoWeights,
    OperatorConfig,
    _de_rand_1,
    _lo_child,
    _polynomial_mutation,
    _random_simplex,
    _sbx_pair,
    ablation_weights,
    lo_base_weights,
)
from ..problems.kernels import evaluate_code

logger = logging.getLogger(__name__)

OP_GA, OP_DE, OP_LO, OP_LLM = 0, 1, 2, 3
OPERATOR_CODES = {"ga": OP_GA, "de": OP_DE, "lo": OP_LO, "llm": OP_LLM}
WEIGHT_CODES = {"lo": 0, "random": 1, "equal": 2, "linear": 3}
W_RANDOM = 1

ALGORITHMS = {"moead": "ga", "moead-de": "de", "moead-lo": "lo", "moead-llm": "llm"}
# settings that distinguish an algorithm beyond its operator; MOEA/D-DE
# follows the classic variant that caps replacements at two
ALGORITHM_DEFAULTS = {"moead-de": {"nr": 2}}


class EvaluationError(RuntimeError):
    """An objective came back NaN or infinite."""

    def __init__(self, x, f, evaluations):
        self.x = np.asarray(x, dtype=float)
        self.f = np.asarray(f, dtype=float)
        self.evaluations = evaluations
        super().__init__(f"non-finite objectives {self.f.tolist()} at evaluation {evaluations} for x = {self.x.tolist()}")


@dataclass(frozen=True)
class MoeadConfig:
    """Run settings.

    ``T`` defaults to ``N // 10``. ``l`` and ``s`` default by operator: two
    parents and one child for GA and DE, ``lo.l`` parents and two children
    for the linear and language-model operators. ``weights`` picks the
    linear operator's rank weights (``lo`` or an ablation scheme) and
    ``theta`` overrides its noise scale, which is zero for ablation schemes
    unless set.

    ``nr=None`` updates the whole neighborhood of the current subproblem.
    With a cap, the mating source (neighborhood or whole population) is
    scanned in shuffled order and at most ``nr`` incumbents are replaced.
    """

    N: int = 100
    T: int | None = None
    N_max: int = 10_000
    sigma3: float = 0.9
    l: int | None = None
    s: int | None = None
    operator: str = "ga"
    ops: OperatorConfig = field(default_factory=OperatorConfig)
    lo: LoWeights = field(default_factory=LoWeights)
    weights: str = "lo"
    theta: float | None = None
    seed: int = 0
    archive_capacity: int | None = None
    track_archive: bool = True
    snapshot_fraction: float = 0.05
    mutate_llm: bool = False
    max_retries: int = 3
    decimal_places: int = 3
    nr: int | None = None

    def __post_init__(self):
        if self.operator not in OPERATOR_CODES:
            raise ValueError(f"unknown operator {self.operator!r}; expected one of {sorted(OPERATOR_CODES)}")
        if self.weights not in WEIGHT_SCHEMES:
            raise ValueError(f"unknown weight scheme {self.weights!r}; expected one of {WEIGHT_SCHEMES}")
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if not 1 <= self.T_ <= self.N:
            raise ValueError(f"neighborhood size T={self.T_} must lie in [1, N={self.N}]")
        if not 0.0 <= self.sigma3 <= 1.0:
            raise ValueError("sigma3 must lie in [0, 1]")
        if self.N_max < 0:
            raise ValueError("N_max must be nonnegative")
        if self.s_ < 1:
            raise ValueError("s must be at least 1")
        need = 2 if self.operator in ("ga", "de") else 1
        if not need <= self.l_ <= self.N:
            raise ValueError(f"l={self.l_} must lie in [{need}, N={self.N}] for operator {self.operator}")
        if self.theta is not None and self.theta < 0:
            raise ValueError("theta must be nonnegative")
        if not 0.0 < self.snapshot_fraction <= 1.0:
            raise ValueError("snapshot_fraction must lie in (0, 1]")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        if self.nr is not None:
            if self.nr < 1:
                raise ValueError("replacement cap nr must be at least 1")
            if self.l_ > self.T_:
                raise ValueError("a replacement cap needs l <= T")

    @property
    def T_(self) -> int:
        return self.T if self.T is not None else max(1, self.N // 10)

    @property
    def l_(self) -> int:
        if self.l is not None:
            return self.l
        return self.lo.l if self.operator in ("lo", "llm") else 2

    @property
    def s_(self) -> int:
        if self.s is not None:
            return self.s
        return 2 if self.operator in ("lo", "llm") else self.ops.s

    @property
    def theta_(self) -> float:
        if self.theta is not None:
            return self.theta
        return self.lo.theta if self.weights == "lo" else 0.0

    def replace(self, **kw) -> "MoeadConfig":
        return replace(self, **kw)


@dataclass
class RunResult:
    algorithm: str
    problem: str
    seed: int
    population: Population
    archive: Population | None
    snapshots: list  # (evaluations, F) pairs
    evaluations: int
    wall_time: float
    weights: np.ndarray
    z: np.ndarray
    interactions: list = field(default_factory=list)
    fallbacks: int = 0

    def trajectory(self, cfg=None, igd_reference=None) -> list[tuple[int, float, float]]:
        """``(evals, hv, igd)`` for every snapshot."""
        from ..indicators import hv, igd

        rows = []
        for e, F in self.snapshots:
            h = hv(F, cfg) if cfg is not None else float("nan")
            g = igd(F, igd_reference) if igd_reference is not None else float("nan")
            rows.append((int(e), h, g))
        return rows


def snapshot_checkpoints(n_max: int, fraction: float = 0.05) -> np.ndarray:
    k = max(1, int(round(1.0 / fraction)))
    return np.array([-(-j * n_max // k) for j in range(1, k + 1)], dtype=np.int64)


# ---------------------------------------------------------------------------
# compiled steps shared by both engines


@njit(cache=True)
def _select_pool(i, B, N, l, sigma3, rng, cand, pool, full):
    # draws: one uniform for the source, then one integer per shuffled slot.
    # With ``full`` the whole source is shuffled into ``cand`` so it can
    # serve as the replacement order. Returns the source size.
    T = B.shape[1]
    if rng.random() < sigma3:
        if l <= T:
            for t in range(T):
                cand[t] = B[i, t]
            for t in range(T if full else l):
                r = rng.integers(t, T)
                tmp = cand[t]
                cand[t] = cand[r]
                cand[r] = tmp
            for t in range(l):
                pool[t] = cand[t]
            return T
        for t in range(T):
            pool[t] = B[i, t]
        inb = np.zeros(N, dtype=np.bool_)
        for t in range(T):
            inb[B[i, t]] = True
        n = 0
        for j in range(N):
            if not inb[j]:
                cand[n] = j
                n += 1
        for t in range(l - T):
            r = rng.integers(t, n)
            tmp = cand[t]
            cand[t] = cand[r]
            cand[r] = tmp
            pool[T + t] = cand[t]
        return l
    for j in range(N):
        cand[j] = j
    for t in range(N if full else l):
        r = rng.integers(t, N)
        tmp = cand[t]
        cand[t] = cand[r]
        cand[r] = tmp
    for t in range(l):
        pool[t] = cand[t]
    return N


@njit(cache=True)
def _sort_pool(pool, F, lam, z, g):
    # insertion sort on (aggregation value, index); g receives the sorted values
    l = pool.shape[0]
    for t in range(l):
        g[t] = _tchebycheff(F[pool[t]], lam, z)
    for t in range(1, l):
        gv = g[t]
        pv = pool[t]
        u = t - 1
        while u >= 0 and (g[u] > gv or (g[u] == gv and pool[u] > pv)):
            g[u + 1] = g[u]
            pool[u + 1] = pool[u]
            u -= 1
        g[u + 1] = gv
        pool[u + 1] = pv


@njit(cache=True)
def _mutate(x, sigma2, pm, eta_m, lower, upper, rng):
    # draws: one uniform unless sigma2 is 0 or 1, then the mutation's own
    if sigma2 <= 0.0:
        return
    if sigma2 < 1.0 and rng.random() >= sigma2:
        return
    _polynomial_mutation(x, pm, eta_m, lower, upper, rng)


@njit(cache=True)
def _make_children(op, i, pool, X, lower, upper, base_w, wmode, theta, dim_prob,
                   eta_c, F_de, CR, sigma1, sigma2, pm, eta_m, rng, C):
    s, d = C.shape
    l = pool.shape[0]
    P = np.empty((l, d))
    if op == OP_LO:
        for t in range(l):
            P[t] = X[pool[t]]
    w = base_w.copy()
    c2 = np.empty(d)
    have_c2 = False
    for c in range(s):
        if sigma1 < 1.0 and rng.random() >= sigma1:
            C[c] = X[i]
        elif op == OP_GA:
            if have_c2:
                C[c] = c2
                have_c2 = False
            else:
                _sbx_pair(X[pool[0]], X[pool[1]], eta_c, lower, upper, rng, C[c], c2)
                have_c2 = True
        elif op == OP_DE:
            _de_rand_1(X[i], X[pool[0]], X[pool[1]], F_de, CR, X[i], lower, upper, rng, C[c])
        else:
            if wmode == W_RANDOM:
                _random_simplex(rng, w)
            _lo_child(P, w, theta, dim_prob, X[i], lower, upper, rng, C[c])
        _mutate(C[c], sigma2, pm, eta_m, lower, upper, rng)


@njit(cache=True)
def _update_capped(X, F, E, xo, fo, eo, idx, W, z, nr):
    replaced = 0
    for t in range(idx.shape[0]):
        if replaced >= nr:
            break
        j = idx[t]
        if _tchebycheff(fo, W[j], z) <= _tchebycheff(F[j], W[j], z):
            X[j, :] = xo
            F[j, :] = fo
            E[j] = eo
            replaced += 1
    return replaced


@njit(cache=True)
def _absorb(child, fc, evals, i, X, F, E, W, B, z, AX, AF, AE, order, free, meta, capacity, track, nr, src):
    _update_reference(z, fc)
    if nr > 0:
        _update_capped(X, F, E, child, fc, evals, src, W, z, nr)
    else:
        _update_neighbors(X, F, E, child, fc, evals, B[i], W, z)
    if track:
        AX, AF, AE, order, free, _ = _archive_insert(AX, AF, AE, order, free, meta, child, fc, evals, capacity)
    return AX, AF, AE, order, free


@njit(cache=True)
def _all_finite(f):
    for k in range(f.shape[0]):
        if not np.isfinite(f[k]):
            return False
    return True


@njit(cache=True)
def _moead_loop(code, X, F, E, W, B, z, lower, upper, n_max, evals, op, l, s, sigma3,
                base_w, wmode, theta, dim_prob, eta_c, F_de, CR, sigma1, sigma2, pm, eta_m,
                AX, AF, AE, order, free, meta, capacity, track, nr, ck, snapF, snapE, nsnap, rng, bad):
    N, d = X.shape
    m = F.shape[1]
    cand = np.empty(N, dtype=np.int64)
    pool = np.empty(l, dtype=np.int64)
    g = np.empty(l)
    C = np.empty((s, d))
    fc = np.empty(m)
    while evals < n_max:
        for i in range(N):
            if evals >= n_max:
                break
            n_src = _select_pool(i, B, N, l, sigma3, rng, cand, pool, nr > 0)
            if op == OP_LO:
                _sort_pool(pool, F, W[i], z, g)
            _make_children(op, i, pool, X, lower, upper, base_w, wmode, theta, dim_prob,
                           eta_c, F_de, CR, sigma1, sigma2, pm, eta_m, rng, C)
            for c in range(s):
                evaluate_code(code, C[c], fc)
                evals += 1
                if not _all_finite(fc):
                    bad[:d] = C[c]
                    bad[d:] = fc
                    return evals, 1, nsnap, AX, AF, AE, order, free
                AX, AF, AE, order, free = _absorb(C[c], fc, evals, i, X, F, E, W, B, z,
                                                  AX, AF, AE, order, free, meta, capacity, track,
                                                  nr, cand[:n_src])
                while nsnap < ck.shape[0] and evals >= ck[nsnap]:
                    snapF[nsnap] = F
                    snapE[nsnap] = evals
                    nsnap += 1
    return evals, 0, nsnap, AX, AF, AE, order, free


# ---------------------------------------------------------------------------
# public API


def select_mating_pool(i, pop: Population, neighborhood, l, sigma3, rng, weights=None, z=None) -> np.ndarray:
    """Indices of ``l`` distinct mating partners for subproblem ``i``.

    When ``weights`` and ``z`` are given the pool is sorted best first by
    the subproblem's Chebyshev value, ties broken by lower index.
    """
    B = np.ascontiguousarray(neighborhood, dtype=np.int64)
    N = len(pop)
    if not 1 <= l <= N:
        raise ValueError(f"pool size l={l} must lie in [1, {N}]")
    cand = np.empty(N, dtype=np.int64)
    pool = np.empty(l, dtype=np.int64)
    _select_pool(int(i), B, N, int(l), float(sigma3), rng, cand, pool, False)
    if weights is not None and z is not None:
        g = np.empty(l)
        _sort_pool(pool, np.ascontiguousarray(pop.F, dtype=float), np.asarray(weights[i], dtype=float), np.asarray(z, dtype=float), g)
    return pool


class _Run:
    """State shared by both engines."""

    def __init__(self, cfg: MoeadConfig, problem, algorithm: str):
        self.cfg = cfg
        self.problem = problem
        self.algorithm = algorithm
        self.t0 = time.perf_counter()
        self.rng = make_rng(cfg.seed)
        m, d = problem.m, problem.d
        self.W = das_dennis(m, divisions_for(cfg.N, m))
        self.B = neighborhoods(self.W, cfg.T_)
        self.lower = np.ascontiguousarray(problem.bounds.lower, dtype=float)
        self.upper = np.ascontiguousarray(problem.bounds.upper, dtype=float)
        N = cfg.N
        X = np.empty((N, d))
        for j in range(N):
            _random_point(self.lower, self.upper, self.rng, X[j])
        F = problem.evaluate_batch(X)
        for j in range(N):
            if not np.all(np.isfinite(F[j])):
                raise EvaluationError(X[j], F[j], j + 1)
        self.X, self.F = X, np.ascontiguousarray(F)
        self.E = np.arange(1, N + 1, dtype=np.int64)
        self.evals = N
        self.z = self.F.min(axis=0)
        self.archive = ExternalArchive(d, m, cfg.archive_capacity)
        if cfg.track_archive:
            for j in range(N):
                self.archive.add(X[j], self.F[j], j + 1)
        self.ck = snapshot_checkpoints(cfg.N_max, cfg.snapshot_fraction)
        self.snapF = np.empty((len(self.ck), N, m))
        self.snapE = np.zeros(len(self.ck), dtype=np.int64)
        self.nsnap = 0
        self.take_snapshots()

        l = cfg.l_
        self.wmode = WEIGHT_CODES[cfg.weights]
        if cfg.weights == "lo":
            self.base_w = lo_base_weights(l, cfg.lo.coeffs)
        elif cfg.weights == "random":
            self.base_w = np.full(l, 1.0 / l)
        else:
            self.base_w = ablation_weights(cfg.weights, l)
        ops = cfg.ops
        self.pm = ops.per_var_prob if ops.per_var_prob is not None else 1.0 / d
        self.op_args = (
            self.base_w, self.wmode, float(cfg.theta_), float(cfg.lo.dim_prob),
            float(ops.eta_c), float(ops.F), float(ops.CR), float(ops.sigma1),
            float(ops.sigma2), float(self.pm), float(ops.eta_m),
        )
        self.capacity = 0 if cfg.archive_capacity is None else int(cfg.archive_capacity)
        self.nr = 0 if cfg.nr is None else int(cfg.nr)
        self.interactions: list[InteractionRecord] = []
        self.fallbacks = 0

    def take_snapshots(self):
        while self.nsnap < len(self.ck) and self.evals >= self.ck[self.nsnap]:
            self.snapF[self.nsnap] = self.F
            self.snapE[self.nsnap] = self.evals
            self.nsnap += 1

    def result(self) -> RunResult:
        # the last checkpoint may fire between the children of one call;
        # it always reports the final population
        k = self.nsnap - 1
        if k >= 0 and self.nsnap == len(self.ck) and self.snapE[k] != self.evals:
            self.snapF[k] = self.F
            self.snapE[k] = self.evals
        snaps = []
        for k in range(self.nsnap):
            e = int(self.snapE[k])
            if snaps and snaps[-1][0] == e:
                snaps[-1] = (e, self.snapF[k].copy())
            else:
                snaps.append((e, self.snapF[k].copy()))
        return RunResult(
            algorithm=self.algorithm,
            problem=self.problem.name,
            seed=self.cfg.seed,
            population=Population(self.X.copy(), self.F.copy(), self.E.copy()),
            archive=self.archive.members if self.cfg.track_archive else None,
            snapshots=snaps,
            evaluations=self.evals,
            wall_time=time.perf_counter() - self.t0,
            weights=self.W,
            z=self.z.copy(),
            interactions=self.interactions,
            fallbacks=self.fallbacks,
        )

    # -- compiled engine ---------------------------------------------------

    def run_compiled(self, op: int):
        cfg = self.cfg
        AX, AF, AE, order, free, meta = self.archive.state()
        bad = np.empty(self.problem.d + self.problem.m)
        evals, status, nsnap, AX, AF, AE, order, free = _moead_loop(
            self.problem.code, self.X, self.F, self.E, self.W, self.B, self.z, self.lower, self.upper,
            cfg.N_max, self.evals, op, cfg.l_, cfg.s_, float(cfg.sigma3), *self.op_args,
            AX, AF, AE, order, free, meta, self.capacity, cfg.track_archive, self.nr,
            self.ck, self.snapF, self.snapE, self.nsnap, self.rng, bad,
        )
        self.archive.load_state(AX, AF, AE, order, free, meta)
        self.evals, self.nsnap = int(evals), int(nsnap)
        if status:
            d = self.problem.d
            raise EvaluationError(bad[:d], bad[d:], self.evals)

    # -- Python engine -----------------------------------------------------

    def absorb(self, i: int, child: np.ndarray, src: np.ndarray):
        fc = np.ascontiguousarray(self.problem.evaluate(child), dtype=float)
        self.evals += 1
        if not np.all(np.isfinite(fc)):
            raise EvaluationError(child, fc, self.evals)
        AX, AF, AE, order, free, meta = self.archive.state()
        AX, AF, AE, order, free = _absorb(
            child, fc, self.evals, i, self.X, self.F, self.E, self.W, self.B, self.z,
            AX, AF, AE, order, free, meta, self.capacity, self.cfg.track_archive, self.nr, src,
        )
        self.archive.load_state(AX, AF, AE, order, free, meta)
        self.take_snapshots()

    def run_python(self, op: int, backend=None, log: InteractionLog | None = None):
        cfg = self.cfg
        N, d = self.X.shape
        l, s = cfg.l_, cfg.s_
        cand = np.empty(N, dtype=np.int64)
        pool = np.empty(l, dtype=np.int64)
        g = np.empty(l)
        C = np.empty((s, d))
        while self.evals < cfg.N_max:
            for i in range(N):
                if self.evals >= cfg.N_max:
                    break
                n_src = _select_pool(i, self.B, N, l, float(cfg.sigma3), self.rng, cand, pool, self.nr > 0)
                if op in (OP_LO, OP_LLM):
                    _sort_pool(pool, self.F, self.W[i], self.z, g)
                if op == OP_LLM:
                    children = self.llm_children(i, pool, g, backend, log)
                else:
                    _make_children(op, i, pool, self.X, self.lower, self.upper, *self.op_args, self.rng, C)
                    children = list(C)
                for child in children:
                    self.absorb(i, np.ascontiguousarray(child), cand[:n_src])

    def llm_children(self, i, pool, g, backend, log):
        cfg = self.cfg
        spec = PromptSpec.from_best_first(self.X[pool], g, s=cfg.s_, decimal_places=cfg.decimal_places)
        try:
            points, record = generate_with_retry(backend, spec, cfg.max_retries, subproblem_index=i)
        except OperatorFailure as exc:
            self.fallbacks += 1
            logger.warning("subproblem %d: %s; using the linear operator for this call", i, exc)
            C = np.empty((cfg.s_, self.problem.d))
            _make_children(OP_LO, i, pool, self.X, self.lower, self.upper, *self.op_args, self.rng, C)
            return list(C)
        # log the unrounded parents, not their prompt renderings
        record.parents = self.X[pool].copy()
        record.parent_values = g.copy()
        self.interactions.append(record)
        if log is not None:
            log.write(record)
        children = []
        for p in points:
            x = np.array(p, dtype=float)
            _clamp_inplace(x, self.lower, self.upper)
            if cfg.mutate_llm:
                _mutate(x, float(cfg.ops.sigma2), float(self.pm), float(cfg.ops.eta_m), self.lower, self.upper, self.rng)
            children.append(x)
        return children


def run_moead(cfg: MoeadConfig, problem, backend=None, log_sink=None, engine: str = "auto", algorithm: str | None = None) -> RunResult:
    """Run MOEA/D with the configured operator.

    ``engine`` is ``"compiled"``, ``"python"`` or ``"auto"`` (compiled
    whenever possible). The language-model operator needs ``backend`` and
    always uses the Python engine; ``log_sink`` receives its interactions.
    """
    op = OPERATOR_CODES[cfg.operator]
    if op == OP_LLM and backend is None:
        raise ValueError("the llm operator needs a backend")
    if engine not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    compiled_ok = op != OP_LLM and problem.code is not None and problem.evaluator is None
    if engine == "compiled" and not compiled_ok:
        raise ValueError("this operator/problem combination needs the python engine")
    if algorithm is None:
        algorithm = {v: k for k, v in ALGORITHMS.items()}[cfg.operator]
    run = _Run(cfg, problem, algorithm)
    if compiled_ok and engine != "python":
        run.run_compiled(op)
    else:
        log = None
        if log_sink is not None:
            log = log_sink if isinstance(log_sink, InteractionLog) else InteractionLog(log_sink)
        try:
            run.run_python(op, backend, log)
        finally:
            if log is not None and log is not log_sink:
                log.close()
    return run.result()


def run_moead_llm(cfg: MoeadConfig, problem, backend, log_sink=None) -> RunResult:
    if cfg.operator != "llm":
        cfg = cfg.replace(operator="llm")
    return run_moead(cfg, problem, backend=backend, log_sink=log_sink)


def llm_demo_config(seed: int = 0) -> MoeadConfig:
    """Settings of the small demonstration with a live model."""
    return MoeadConfig(N=50, T=10, N_max=1000, sigma3=0.9, l=10, s=2, operator="llm", ops=OperatorConfig(sigma2=0.9), seed=seed)


def algorithm_config(algorithm: str, **kw) -> MoeadConfig:
    """Config for a named MOEA/D variant; keyword arguments override."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}")
    base = dict(operator=ALGORITHMS[algorithm])
    base.update(ALGORITHM_DEFAULTS.get(algorithm, {}))
    base.update(kw)
    return MoeadConfig(**base)


def standard_config(algorithm: str, problem, seed: int = 0, **kw) -> MoeadConfig:
    """Benchmark settings for ``problem``: N=200 (300 for three objectives),
    T=N/10, sigma2=0.9, 200k evaluations on ZDT and 300k otherwise.

    ``algorithm`` is a name such as ``moead-lo`` or a bare operator code.
    """
    if algorithm in OPERATOR_CODES:
        algorithm = {v: k for k, v in ALGORITHMS.items()}[algorithm]
    N = 300 if problem.m == 3 else 200
    n_max = 200_000 if problem.name.startswith("zdt") else 300_000
    base = dict(N=N, T=N // 10, N_max=n_max, sigma3=0.9, ops=OperatorConfig(sigma1=1.0, sigma2=0.9), seed=seed)
    base.update(kw)
    return algorithm_config(algorithm, **base)
