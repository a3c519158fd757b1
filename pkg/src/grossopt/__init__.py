"""Lipschitz global optimization with finite, infinite and infinitesimal scalings.

The solver runs unchanged on machine floats and on exact grossone numbers, so
the trial sequences on ``f`` and on ``alpha*f + beta`` can be compared exactly
for infinite and infinitesimal ``alpha`` and ``beta``.
"""

from .grossone import GROSSONE, GrossNumber, parse
from .problems import BUILTIN_PROBLEMS, Problem, ScaledProblem, get_problem, grid_min_oracle
from .solver import METHOD_IDS, MethodConfig, RunReport, Search, run
from .experiments import ScalePair, check_homogeneity, illcond_demo, benchmark_suite

__all__ = [
    "GROSSONE",
    "GrossNumber",
    "parse",
    "BUILTIN_PROBLEMS",
    "Problem",
    "ScaledProblem",
    "get_problem",
    "grid_min_oracle",
    "METHOD_IDS",
    "MethodConfig",
    "RunReport",
    "Search",
    "run",
    "ScalePair",
    "check_homogeneity",
    "illcond_demo",
    "benchmark_suite",
]
