"""Benchmark suites: ZDT, UF (CEC 2009) and the RE engineering problems."""

from .suites import (
    DEFAULT_PF_POINTS,
    PROBLEM_NAMES,
    ProblemNotFound,
    ProblemSpec,
    get_problem,
    make_problem,
    nondominated,
    registry,
)


def evaluate(problem: ProblemSpec, x):
    return problem.evaluate(x)


def sample_pf(problem: ProblemSpec, n: int = DEFAULT_PF_POINTS):
    return problem.sample_pf(n)


__all__ = [
    "DEFAULT_PF_POINTS",
    "PROBLEM_NAMES",
    "ProblemNotFound",
    "ProblemSpec",
    "evaluate",
    "get_problem",
    "make_problem",
    "nondominated",
    "registry",
    "sample_pf",
]
