"""Regenerate the stored RE reference fronts.

Pools the external archives of long MOEA/D, MOEA/D-DE and NSGA-II runs,
keeps the nondominated union and thins it to at most 10,000 points.

    python3 tools/make_re_fronts.py [--seeds 5] [--evals 200000]
"""

import argparse
from pathlib import Path

import numpy as np

from moeadlo.algorithms import Nsga2Config, algorithm_config, run_moead, run_nsga2
from moeadlo.problems import make_problem, nondominated

DATA = Path(__file__).resolve().parents[1] / "src" / "moeadlo" / "problems" / "data"


def front(name, seeds, evals, max_points=10_000):
    p = make_problem(name)
    parts = []
    for s in range(seeds):
        for algo in ("moead", "moead-de", "moead-lo"):
            r = run_moead(algorithm_config(algo, N=200, T=20, N_max=evals, seed=s), p)
            parts.append(r.archive.F)
        parts.append(run_nsga2(Nsga2Config(N=200, N_max=evals, seed=s), p).archive.F)
    P = np.unique(np.vstack(parts), axis=0)
    P = nondominated(P)
    P = P[np.argsort(P[:, 0], kind="stable")]
    if len(P) > max_points:
        P = P[np.unique(np.linspace(0, len(P) - 1, max_points).round().astype(int))]
    return P


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--evals", type=int, default=200_000)
    ap.add_argument("problems", nargs="*", default=["re21", "re22", "re23", "re24", "re25"])
    args = ap.parse_args()
    DATA.mkdir(parents=True, exist_ok=True)
    for name in args.problems:
        P = front(name, args.seeds, args.evals)
        np.savetxt(DATA / f"{name}.txt", P, fmt="%.17g")
        print(name, len(P), P.min(axis=0), P.max(axis=0))


if __name__ == "__main__":
    main()
