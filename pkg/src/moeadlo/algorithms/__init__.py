"""MOEA/D variants and the NSGA-II baseline."""

from .moead import (
    ALGORITHMS,
    algorithm_config,
    EvaluationError,
    MoeadConfig,
    RunResult,
    llm_demo_config,
    standard_config,
    run_moead,
    run_moead_llm,
    select_mating_pool,
    snapshot_checkpoints,
)
from .nsga2 import Nsga2Config, fast_nondominated_sort, run_nsga2

__all__ = [
    "ALGORITHMS",
    "algorithm_config",
    "EvaluationError",
    "MoeadConfig",
    "Nsga2Config",
    "RunResult",
    "fast_nondominated_sort",
    "llm_demo_config",
    "standard_config",
    "run_moead",
    "run_moead_llm",
    "run_nsga2",
    "select_mating_pool",
    "snapshot_checkpoints",
]
