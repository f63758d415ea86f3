"""Command-line harness: single runs, experiment grids, distillation, indicators, plot data."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import experiment as ex
from .indicators import IndicatorConfig, hv, igd
from .io import format_float, population_csv, read_csv_dicts, read_csv_matrix, read_keyvalue, write_csv
from .llm import ConfigurationError, make_backend, read_interactions
from .problems import PROBLEM_NAMES, ProblemNotFound

logger = logging.getLogger("moeadlo")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _settings(pairs, config_path=None) -> dict:
    settings = {}
    if config_path:
        settings.update(read_keyvalue(config_path))
    for item in pairs or []:
        if "=" not in item:
            raise UsageError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        settings[k.strip()] = v.strip()
    return settings


def _backend(args):
    if not args.backend:
        raise UsageError("moead-llm needs --backend scripted:<name>, recorded:<dir> or live")
    live = {}
    if args.backend == "live":
        if not args.base_url or not args.model:
            raise UsageError("the live backend needs --base-url and --model")
        live = dict(base_url=args.base_url, model=args.model, temperature=args.temperature, min_interval=args.min_interval)
    backend = make_backend(args.backend, **live)
    if args.record:
        from .llm import RecordingBackend

        backend = RecordingBackend(backend, args.record)
    return backend


def cmd_run(args) -> int:
    settings = _settings(args.set, args.config)
    if args.evals is not None:
        settings["N_max"] = str(args.evals)
    if args.pop is not None:
        settings["N"] = str(args.pop)
    if args.dim is not None:
        settings["dim"] = str(args.dim)
    problem = ex.resolve_problem(args.problem, settings)
    run_settings = {k: v for k, v in settings.items() if k not in ("hv_convention", "indicator_set", "dim")}
    try:
        cfg = ex.build_config(args.algo, problem, args.seed, run_settings)
    except ex.SettingsError as exc:
        raise UsageError(str(exc)) from exc
    backend = _backend(args) if args.algo == "moead-llm" else None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    log_sink = out / "interactions.jsonl" if args.algo == "moead-llm" else None
    if log_sink is not None and log_sink.exists():
        log_sink.unlink()
    result = ex.execute(args.algo, problem, cfg, backend=backend, log_sink=log_sink)

    icfg = ex.indicator_config(problem, settings)
    ref = problem.reference_front
    F = ex.indicator_set(result, settings)
    final_hv, final_igd = hv(F, icfg), igd(F, ref)
    population_csv(out / "population.csv", result.population.F, result.population.X if args.with_x else None)
    if result.archive is not None:
        population_csv(out / "archive.csv", result.archive.F, result.archive.X if args.with_x else None)
    else:
        population_csv(out / "archive.csv", np.empty((0, problem.m)))
    write_csv(out / "trajectory.csv", ["evals", "hv", "igd"], result.trajectory(icfg, ref))
    summary = {
        "algorithm": args.algo,
        "problem": problem.name,
        "d": problem.d,
        "m": problem.m,
        "seed": args.seed,
        "evaluations": result.evaluations,
        "hv": final_hv,
        "igd": final_igd,
        "indicator_set": settings.get("indicator_set", "final"),
        "archive_size": 0 if result.archive is None else len(result.archive),
        "fallbacks": result.fallbacks,
        "interactions": len(result.interactions),
        "settings": run_settings,
        "wall_time": result.wall_time,
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    print(f"{args.algo} on {problem.name} (seed {args.seed}): {result.evaluations} evaluations")
    print(f"HV  = {final_hv:.6e}")
    print(f"IGD = {final_igd:.6e}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        if args.preset:
            plan = ex.preset(args.preset)
        elif args.plan:
            plan = ex.parse_plan(Path(args.plan).read_text(encoding="utf-8"))
        else:
            raise UsageError("give a plan file or --preset")
        if args.seeds:
            plan.seeds = ex.parse_seeds(args.seeds)
        if args.evals is not None:
            plan.settings["N_max"] = str(args.evals)
        if args.problems:
            plan.problems = args.problems.split(",")
        plan.__post_init__()
    except ex.SettingsError as exc:
        raise UsageError(str(exc)) from exc
    needs_backend = any(v.algorithm == "moead-llm" for v in plan.variants)
    backend = args.backend or plan.backend
    if needs_backend and not backend:
        raise UsageError(f"plan {plan.name} contains moead-llm runs; pass --backend")
    records = ex.run_plan(plan, workers=args.workers, backend=backend)
    texts = ex.write_outputs(plan, records, args.out)
    for text in texts.values():
        print(text)
    failed = sum(1 for r in records if r["error"])
    if failed:
        print(f"{failed} of {len(records)} runs failed; see {Path(args.out) / 'cells.csv'}", file=sys.stderr)
        return EXIT_RUNTIME if failed == len(records) else EXIT_OK
    return EXIT_OK


def cmd_fit(args) -> int:
    from .fit import fit_records

    records, skipped = read_interactions(args.log)
    if skipped:
        print(f"skipped {skipped} malformed line(s)", file=sys.stderr)
    if not records:
        print("no usable interaction records", file=sys.stderr)
        return EXIT_RUNTIME
    result = fit_records(records, offspring="each" if args.each_offspring else "first", per_call=args.per_call)
    op = result.operator(args.dim_prob)
    Path(args.out).write_text(op.to_text(), encoding="utf-8")
    report = result.report()
    report_path = Path(args.report) if args.report else Path(args.out).with_suffix(".report.txt")
    report_path.write_text(report, encoding="utf-8")
    print(report, end="")
    print(f"operator written to {args.out}")
    return EXIT_OK


def cmd_indicators(args) -> int:
    problem = ex.resolve_problem(args.problem, {"dim": str(args.dim)} if args.dim else None)
    try:
        F = read_csv_matrix(args.front)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if F.size == 0:
        raise UsageError(f"{args.front} holds no objective vectors")
    if F.shape[1] != problem.m:
        raise UsageError(f"{args.front} has {F.shape[1]} objectives, {problem.name} has {problem.m}")
    cfg = IndicatorConfig.for_problem(problem, args.convention)
    if args.ref:
        cfg = IndicatorConfig(
            hv_reference=np.array([float(v) for v in args.ref.split(",")]),
            normalize=False,
            scale_by_reference=False,
            igd_reference=cfg.igd_reference,
        )
    print(f"HV  = {hv(F, cfg):.6e}")
    print(f"IGD = {igd(F, problem.reference_front):.6e}")
    return EXIT_OK


def cmd_plotdata(args) -> int:
    if args.kind not in ("convergence", "front"):
        raise UsageError(f"unknown kind {args.kind!r}; expected convergence or front")
    missing = []
    rows = []
    header = None
    for d in args.runs:
        d = Path(d)
        summary_path = d / "summary.json"
        target = d / ("trajectory.csv" if args.kind == "convergence" else "population.csv")
        if not summary_path.exists() or not target.exists():
            missing.extend(str(p) for p in (summary_path, target) if not p.exists())
            continue
        summary = json.loads(summary_path.read_text(encoding="utf-8"))
        algo = summary["algorithm"]
        if args.kind == "convergence":
            header = ["algo", "seed", "evals", "hv"]
            for r in read_csv_dicts(target):
                rows.append([algo, summary["seed"], r["evals"], r["hv"]])
        else:
            F = read_csv_matrix(target)
            cols = [f"f{j + 1}" for j in range(F.shape[1])]
            if header is not None and header[1:] != cols:
                raise UsageError("front runs mix objective counts")
            header = ["algo"] + cols
            rows.extend([algo] + [format_float(v) for v in f] for f in F)
    if missing:
        print("missing run files:\n  " + "\n  ".join(missing), file=sys.stderr)
        return EXIT_RUNTIME
    if header is None:
        raise UsageError("no run directories given")
    if args.out:
        write_csv(args.out, header, rows)
    else:
        import csv

        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moeadlo", description=__doc__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one algorithm on one problem")
    r.add_argument("--algo", required=True, choices=ex.ALGORITHM_NAMES)
    r.add_argument("--problem", required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--evals", type=int, help="evaluation budget N_max")
    r.add_argument("--pop", type=int, help="population size N")
    r.add_argument("--dim", type=int, help="number of decision variables")
    r.add_argument("--set", action="append", metavar="KEY=VALUE", help="config override, repeatable")
    r.add_argument("--config", help="key = value config file")
    r.add_argument("--out", default="run_out")
    r.add_argument("--with-x", action="store_true", help="also write decision variables")
    _backend_args(r)
    r.set_defaults(func=cmd_run)

    e = sub.add_parser("experiment", help="run a grid of algorithms x problems x seeds")
    e.add_argument("plan", nargs="?", help="plan file")
    e.add_argument("--preset", choices=sorted(ex.PRESETS))
    e.add_argument("--seeds", help="seed count, range a-b or list")
    e.add_argument("--evals", type=int, help="override N_max for every run")
    e.add_argument("--problems", help="comma-separated subset of problems")
    e.add_argument("--workers", type=int, default=None)
    e.add_argument("--out", default="experiment_out")
    _backend_args(e)
    e.set_defaults(func=cmd_experiment)

    f = sub.add_parser("fit", help="distill an interaction log into an operator file")
    f.add_argument("log")
    f.add_argument("--out", required=True, help="operator definition file")
    f.add_argument("--report", help="fit report path (default: next to --out)")
    f.add_argument("--dim-prob", type=float, default=0.1)
    f.add_argument("--per-call", action="store_true", help="average per-call fits instead of one pooled fit")
    f.add_argument("--each-offspring", action="store_true", help="use every parsed offspring, not only the first")
    f.set_defaults(func=cmd_fit)

    i = sub.add_parser("indicators", help="HV and IGD of a front CSV")
    i.add_argument("front")
    i.add_argument("--problem", required=True)
    i.add_argument("--dim", type=int)
    i.add_argument("--convention", choices=["normalized", "re", "raw"])
    i.add_argument("--ref", help="explicit raw reference point, comma separated")
    i.set_defaults(func=cmd_indicators)

    q = sub.add_parser("plotdata", help="tidy CSV for external plotting")
    q.add_argument("kind", help="convergence or front")
    q.add_argument("runs", nargs="+", help="run output directories")
    q.add_argument("--out")
    q.set_defaults(func=cmd_plotdata)
    return p


def _backend_args(p):
    p.add_argument("--backend", help="scripted:<name>, recorded:<dir> or live")
    p.add_argument("--record", help="store every model response as a fixture in this directory")
    p.add_argument("--base-url")
    p.add_argument("--model")
    p.add_argument("--temperature", type=float, default=1.0)
    p.add_argument("--min-interval", type=float, default=0.0)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigurationError, ProblemNotFound, ex.SettingsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
