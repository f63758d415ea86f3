"""Run configuration from flat settings, experiment plans and result tables."""

from __future__ import annotations

import json
import logging
import os
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .algorithms import ALGORITHMS, MoeadConfig, Nsga2Config, standard_config, run_moead, run_nsga2
from .indicators import IndicatorConfig, hv, igd
from .io import format_float, parse_keyvalue, write_csv
from .operators import LoWeights, OperatorConfig
from .problems import get_problem
from .stats import stat_row, tally

logger = logging.getLogger(__name__)

ALGORITHM_NAMES = tuple(ALGORITHMS) + ("nsga2",)

_MOEAD_KEYS = {
    "N": int, "T": int, "N_max": int, "sigma3": float, "l": int, "s": int,
    "weights": str, "theta": float, "archive_capacity": int, "max_retries": int,
    "decimal_places": int, "snapshot_fraction": float,
}
_OP_KEYS = {"sigma1": float, "sigma2": float, "eta_c": float, "eta_m": float, "F": float, "CR": float, "per_var_prob": float}
_LO_KEYS = {"a": float, "b": float, "c": float, "d": float, "dim_prob": float}
_NSGA2_KEYS = {"N": int, "N_max": int, "pc": float, "pm": float, "eta_c": float, "eta_m": float}
_FLAG_KEYS = {"mutate_llm", "track_archive"}
_OTHER_KEYS = {"nr", "operator_file", "dim", "hv_convention", "indicator_set"}


class SettingsError(ValueError):
    pass


def _flag(v: str) -> bool:
    v = v.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise SettingsError(f"not a boolean: {v!r}")


def known_keys(algorithm: str) -> set[str]:
    if algorithm == "nsga2":
        return set(_NSGA2_KEYS) | {"dim", "hv_convention", "indicator_set", "track_archive"}
    return set(_MOEAD_KEYS) | set(_OP_KEYS) | set(_LO_KEYS) | _FLAG_KEYS | _OTHER_KEYS


def build_config(algorithm: str, problem, seed: int, settings: dict | None = None):
    """MOEA/D or NSGA-II config for ``problem`` from benchmark defaults plus string settings."""
    settings = dict(settings or {})
    unknown = set(settings) - known_keys(algorithm)
    if unknown:
        raise SettingsError(f"unknown setting(s) for {algorithm}: {', '.join(sorted(unknown))}")
    try:
        if algorithm == "nsga2":
            base = standard_config("moead", problem)
            kw = {"N": base.N, "N_max": base.N_max, "seed": seed}
            for k, conv in _NSGA2_KEYS.items():
                if k in settings:
                    kw[k] = conv(settings[k])
            if "track_archive" in settings:
                kw["track_archive"] = _flag(settings["track_archive"])
            return Nsga2Config(**kw)
        if algorithm not in ALGORITHMS:
            raise SettingsError(f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHM_NAMES)}")
        kw = {}
        for k, conv in _MOEAD_KEYS.items():
            if k in settings:
                kw[k] = conv(settings[k])
        for k in _FLAG_KEYS:
            if k in settings:
                kw[k] = _flag(settings[k])
        if "nr" in settings:
            kw["nr"] = None if settings["nr"].strip().lower() in ("none", "0", "") else int(settings["nr"])
        lo = LoWeights()
        if "operator_file" in settings:
            lo = LoWeights.from_text(Path(settings["operator_file"]).read_text(encoding="utf-8"))
        lo_kw = {k: conv(settings[k]) for k, conv in _LO_KEYS.items() if k in settings}
        if lo_kw:
            lo = replace(lo, **lo_kw)
        if "l" in kw:
            lo = lo.with_l(kw["l"])
        ops_kw = dict(sigma1=1.0, sigma2=0.9)
        ops_kw.update({k: conv(settings[k]) for k, conv in _OP_KEYS.items() if k in settings})
        kw.update(ops=OperatorConfig(**ops_kw), lo=lo)
        return standard_config(algorithm, problem, seed=seed, **kw)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SettingsError):
            raise
        raise SettingsError(str(exc)) from exc


def resolve_problem(name: str, settings: dict | None = None):
    settings = settings or {}
    d = int(settings["dim"]) if "dim" in settings else None
    return get_problem(name, d)


def indicator_config(problem, settings: dict | None = None) -> IndicatorConfig:
    return IndicatorConfig.for_problem(problem, (settings or {}).get("hv_convention"))


def execute(algorithm: str, problem, cfg, backend=None, log_sink=None):
    if algorithm == "nsga2":
        return run_nsga2(cfg, problem)
    return run_moead(cfg, problem, backend=backend, log_sink=log_sink, algorithm=algorithm)


def indicator_set(result, settings: dict | None = None) -> np.ndarray:
    which = (settings or {}).get("indicator_set", "final")
    if which == "final":
        return result.population.F
    if which == "archive":
        if result.archive is None:
            raise SettingsError("archive indicators need track_archive on")
        return result.archive.F
    raise SettingsError(f"indicator_set must be 'final' or 'archive', got {which!r}")


# ---------------------------------------------------------------------------
# plans


@dataclass
class Variant:
    label: str
    algorithm: str
    settings: dict = field(default_factory=dict)


@dataclass
class ExperimentPlan:
    name: str
    variants: list
    problems: list
    seeds: list
    reference: str
    metrics: tuple = ("hv", "igd")
    settings: dict = field(default_factory=dict)
    workers: int = 1
    backend: str | None = None

    def __post_init__(self):
        if not self.variants:
            raise SettingsError("plan has no algorithms")
        if not self.problems:
            raise SettingsError("plan has no problems")
        if not self.seeds:
            raise SettingsError("plan has no seeds")
        if len(set(self.seeds)) != len(self.seeds):
            raise SettingsError("seeds must be distinct")
        labels = [v.label for v in self.variants]
        if len(set(labels)) != len(labels):
            raise SettingsError("variant labels must be distinct")
        if self.reference not in labels:
            raise SettingsError(f"reference {self.reference!r} is not one of the variants {labels}")
        for m in self.metrics:
            if m not in ("hv", "igd"):
                raise SettingsError(f"unknown metric {m!r}")
        for v in self.variants:
            if v.algorithm not in ALGORITHM_NAMES:
                raise SettingsError(f"unknown algorithm {v.algorithm!r} in variant {v.label}")
        for p in self.problems:
            get_problem(p)

    @property
    def labels(self) -> list[str]:
        return [v.label for v in self.variants]

    def cells(self):
        for p in self.problems:
            for v in self.variants:
                for s in self.seeds:
                    yield v, p, s


def parse_seeds(text: str) -> list[int]:
    """``"30"`` means seeds 0..29; ``"3-7"`` a range; ``"1 4 9"`` a list."""
    text = text.strip()
    if "-" in text and " " not in text and "," not in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    parts = text.replace(",", " ").split()
    if len(parts) == 1:
        return list(range(int(parts[0])))
    return [int(p) for p in parts]


def _parse_variant(label: str, spec: str) -> Variant:
    tokens = spec.split()
    if not tokens:
        raise SettingsError(f"variant {label} has no algorithm")
    settings = {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise SettingsError(f"variant {label}: expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        settings[k] = v
    return Variant(label, tokens[0], settings)


_PLAN_KEYS = {"name", "algorithms", "problems", "seeds", "reference", "metrics", "workers", "backend"}


def parse_plan(text: str) -> ExperimentPlan:
    """Plan file: flat ``key = value`` lines.

    ``algorithms`` lists algorithm names; ``variant.<label> = <algorithm>
    key=value ...`` adds a labelled configuration. Any other key is a
    setting applied to every run.
    """
    kv = parse_keyvalue(text)
    if not kv:
        raise SettingsError("empty plan")
    variants = [Variant(a, a) for a in kv.get("algorithms", "").split()]
    settings = {}
    for k, v in kv.items():
        if k.startswith("variant."):
            variants.append(_parse_variant(k[len("variant."):], v))
        elif k not in _PLAN_KEYS:
            settings[k] = v
    labels = [v.label for v in variants]
    return ExperimentPlan(
        name=kv.get("name", "experiment"),
        variants=variants,
        problems=kv.get("problems", "").split(),
        seeds=parse_seeds(kv.get("seeds", "30")),
        reference=kv.get("reference", labels[-1] if labels else ""),
        metrics=tuple(kv.get("metrics", "hv igd").split()),
        settings=settings,
        workers=int(kv.get("workers", "1")),
        backend=kv.get("backend"),
    )


_ZDT_UF = "zdt1 zdt2 zdt3 zdt4 zdt6 uf1 uf2 uf3 uf4 uf5 uf6 uf7 uf8 uf9"

PRESETS = {
    "table2_hv": f"""
name = table2_hv
algorithms = nsga2 moead moead-de moead-lo
problems = {_ZDT_UF}
seeds = 30
reference = moead-lo
metrics = hv
""",
    "table3_igd": f"""
name = table3_igd
algorithms = nsga2 moead moead-de moead-lo
problems = {_ZDT_UF}
seeds = 30
reference = moead-lo
metrics = igd
""",
    "table4_ablation": """
name = table4_ablation
variant.Random = moead-lo weights=random
variant.Equal = moead-lo weights=equal
variant.Linear = moead-lo weights=linear
variant.LO40 = moead-lo l=40
variant.LO30 = moead-lo l=30
variant.LO20 = moead-lo l=20
variant.LO10 = moead-lo l=10
problems = uf1 uf2 uf3 uf4 uf5 uf6 uf7 uf8 uf9
seeds = 30
reference = LO10
metrics = igd
""",
    "table1_re_demo": """
name = table1_re_demo
variant.MOEA/D = moead N=50 T=10 N_max=1000
variant.MOEA/D-LLM = moead-llm N=50 T=10 N_max=1000 l=10 s=2
problems = re21 re22 re23 re24 re25
seeds = 1
reference = MOEA/D-LLM
metrics = hv
""",
}


def preset(name: str) -> ExperimentPlan:
    if name not in PRESETS:
        raise SettingsError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return parse_plan(PRESETS[name])


# ---------------------------------------------------------------------------
# running


def run_cell(variant: Variant, problem_name: str, seed: int, plan_settings: dict, backend_spec: str | None = None) -> dict:
    """One (variant, problem, seed) run; failures are captured in the record."""
    settings = dict(plan_settings)
    settings.update(variant.settings)
    rec = {"label": variant.label, "algorithm": variant.algorithm, "problem": problem_name, "seed": seed}
    try:
        problem = resolve_problem(problem_name, settings)
        run_settings = {k: v for k, v in settings.items() if k not in ("hv_convention", "indicator_set")}
        cfg = build_config(variant.algorithm, problem, seed, run_settings)
        backend = None
        if variant.algorithm == "moead-llm":
            from .llm import make_backend

            if not backend_spec:
                raise SettingsError("moead-llm cells need a backend")
            backend = make_backend(backend_spec)
        result = execute(variant.algorithm, problem, cfg, backend=backend)
        F = indicator_set(result, settings)
        rec.update(
            hv=hv(F, indicator_config(problem, settings)),
            igd=igd(F, problem.reference_front),
            evaluations=result.evaluations,
            wall_time=result.wall_time,
            error="",
        )
    except Exception as exc:  # recorded per cell, the grid continues
        logger.error("cell %s/%s/%s failed: %s", variant.label, problem_name, seed, exc)
        rec.update(hv=float("nan"), igd=float("nan"), evaluations=0, wall_time=0.0, error=f"{type(exc).__name__}: {exc}")
        logger.debug(traceback.format_exc())
    return rec


def run_plan(plan: ExperimentPlan, workers: int | None = None, backend: str | None = None) -> list[dict]:
    workers = workers or plan.workers
    backend = backend or plan.backend
    cells = list(plan.cells())
    if workers <= 1:
        return [run_cell(v, p, s, plan.settings, backend) for v, p, s in cells]
    with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
        futures = [pool.submit(run_cell, v, p, s, plan.settings, backend) for v, p, s in cells]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# tables


def build_rows(plan: ExperimentPlan, records: list[dict], metric: str):
    rows = []
    for p in plan.problems:
        samples = {
            label: [r[metric] for r in records if r["problem"] == p and r["label"] == label]
            for label in plan.labels
        }
        rows.append(stat_row(p, samples, plan.reference, higher_is_better=(metric == "hv")))
    return rows


def _cell_text(row, label):
    mean = row.mean[label]
    if not np.isfinite(mean):
        return "n/a (failed)"
    text = f"{mean:.4e} ({row.std[label]:.2e})"
    if label in row.marks:
        text += f" {row.marks[label]}"
    if row.best == label:
        text = "*" + text
    if row.count[label] < max(row.count.values()):
        text += " !"
    return text


def table_text(plan: ExperimentPlan, rows, metric: str) -> str:
    labels = plan.labels
    header = ["Problem"] + labels
    body = [[r.problem] + [_cell_text(r, lab) for lab in labels] for r in rows]
    counts = tally(rows, labels, plan.reference)
    footer = ["+/-/="] + ["/".join(map(str, counts[lab])) if lab in counts else "" for lab in labels]
    table = [header] + body + [footer]
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    rule = "-" * len(lines[0])
    notes = [
        f"{metric.upper()}: mean (std) over seeds; * marks the best mean per row.",
        f"+/-/= : significantly better / worse / no different than {plan.reference} (rank-sum, alpha 0.05).",
    ]
    if any("!" in c for row in body for c in row):
        notes.append("! : some runs of this cell failed; see cells.csv.")
    return "\n".join([lines[0], rule] + lines[1:-1] + [rule, lines[-1], ""] + notes) + "\n"


def table_csv(path, plan: ExperimentPlan, rows) -> None:
    header = ["problem"]
    for lab in plan.labels:
        header += [f"{lab}_mean", f"{lab}_std", f"{lab}_mark", f"{lab}_n"]
    header.append("best")
    out = []
    for r in rows:
        line = [r.problem]
        for lab in plan.labels:
            line += [format_float(r.mean[lab]), format_float(r.std[lab]), r.marks.get(lab, ""), str(r.count[lab])]
        line.append(r.best or "")
        out.append(line)
    write_csv(path, header, out)


def write_outputs(plan: ExperimentPlan, records: list[dict], out_dir) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    keys = ["label", "algorithm", "problem", "seed", "hv", "igd", "evaluations", "wall_time", "error"]
    ordered = sorted(records, key=lambda r: (plan.problems.index(r["problem"]), plan.labels.index(r["label"]), r["seed"]))
    rows = []
    for r in ordered:
        rows.append([format_float(r[k]) if isinstance(r[k], float) else str(r[k]) for k in keys])
    write_csv(out / "cells.csv", keys, rows)
    texts = {}
    for metric in plan.metrics:
        stat_rows = build_rows(plan, records, metric)
        table_csv(out / f"table_{metric}.csv", plan, stat_rows)
        text = table_text(plan, stat_rows, metric)
        (out / f"table_{metric}.txt").write_text(text, encoding="utf-8")
        texts[metric] = text
    (out / "plan.json").write_text(
        json.dumps(
            {
                "name": plan.name,
                "variants": [[v.label, v.algorithm, v.settings] for v in plan.variants],
                "problems": plan.problems,
                "seeds": plan.seeds,
                "reference": plan.reference,
                "metrics": list(plan.metrics),
                "settings": plan.settings,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    return texts
