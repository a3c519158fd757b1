"""Univariate test objectives, affine scaling ``g = alpha*f + beta`` and grid oracles."""

from __future__ import annotations

import ast
import json
import math
import operator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .scalar import FLOAT, Scalar, ScalarOps, ops_for

__all__ = [
    "Problem",
    "ScaledProblem",
    "hansen_f1",
    "hansen_f2",
    "hansen_f3",
    "BUILTIN_PROBLEMS",
    "get_problem",
    "grid",
    "grid_min_oracle",
    "lipschitz_overestimate",
    "parse_expression",
    "problem_from_expression",
    "load_problems",
]


def hansen_f1(x):
    return (
        x**6 / 6.0
        - 52.0 / 25.0 * x**5
        + 39.0 / 80.0 * x**4
        + 71.0 / 10.0 * x**3
        - 79.0 / 20.0 * x**2
        - x
        + 1.0 / 10.0
    )


def hansen_f2(x):
    return np.sin(x) + np.sin(10.0 * x / 3.0)


def hansen_f3(x):
    total = 0.0
    for k in range(1, 6):
        total = total - k * np.sin((k + 1) * x + k)
    return total


@dataclass(frozen=True)
class Problem:
    """Objective ``func`` on ``[a, b]``.

    ``func`` should accept floats and, ideally, numpy arrays (used by the grid
    oracles).  ``lipschitz`` is an a-priori overestimate of the Lipschitz
    constant, used by the a-priori estimator when no other value is given.
    """

    name: str
    a: float
    b: float
    func: Callable = field(repr=False, compare=False)
    known_minima: tuple[tuple[float, float], ...] = ()
    lipschitz: float | None = None
    expression: str | None = None

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"empty domain [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    def check_domain(self, x: float) -> None:
        if not self.a <= x <= self.b:
            raise ValueError(f"x={x!r} outside [{self.a}, {self.b}] of {self.name}")

    def __call__(self, x: float) -> float:
        self.check_domain(x)
        v = float(self.func(float(x)))
        if not math.isfinite(v):
            raise ValueError(f"{self.name}({x!r}) is not finite")
        return v

    def values(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        try:
            vs = np.asarray(self.func(xs), dtype=float)
        except TypeError:
            vs = None
        if vs is None or vs.shape != xs.shape:
            vs = np.array([float(self.func(float(x))) for x in xs])
        return vs


@dataclass(frozen=True)
class ScaledProblem:
    """The objective ``g(x) = alpha * f(x) + beta`` with ``alpha > 0``.

    ``alpha`` and ``beta`` may be floats or gross numbers; the scalar
    realization used by the solver follows from their types.
    """

    base: Problem
    alpha: Scalar = 1.0
    beta: Scalar = 0.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def ops(self) -> ScalarOps:
        return ops_for(self.alpha, self.beta)

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def a(self) -> float:
        return self.base.a

    @property
    def b(self) -> float:
        return self.base.b

    def __call__(self, x: float) -> Scalar:
        return self.alpha * self.ops.inject(self.base(x)) + self.beta

    def scale_values(self, fs: Iterable[float]) -> list:
        ops = self.ops
        return [self.alpha * ops.inject(v) + self.beta for v in fs]


def eval_scaled(p: ScaledProblem, x: float) -> Scalar:
    return p(x)


def as_scaled(p: Problem | ScaledProblem) -> ScaledProblem:
    return p if isinstance(p, ScaledProblem) else ScaledProblem(p)


# Domains and reference minima of the first three functions of the
# Hansen & Jaumard univariate test set; f3 minima to four decimals.
# The a-priori constants are lipschitz_overestimate(p, 1e-4, 1.2), frozen.
BUILTIN_PROBLEMS: dict[str, Problem] = {
    "f1": Problem(
        "f1", -1.5, 11.0, hansen_f1,
        known_minima=((10.0, -29763.233),),
        lipschitz=16642.199786947458,
    ),
    "f2": Problem(
        "f2", 2.7, 7.5, hansen_f2,
        known_minima=((5.145735, -1.899599),),
        lipschitz=5.1427760828193225,
    ),
    "f3": Problem(
        "f3", -10.0, 10.0, hansen_f3,
        known_minima=((-0.491, -12.0312), (-6.775, -12.0312), (5.792, -12.0312)),
        lipschitz=82.10332332035983,
    ),
}


def get_problem(name: str) -> Problem:
    try:
        return BUILTIN_PROBLEMS[name]
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; known: {', '.join(BUILTIN_PROBLEMS)}") from None


def grid(a: float, b: float, step: float) -> np.ndarray:
    """Points ``a + step*i`` not exceeding ``b`` (up to rounding of the count)."""
    if not step > 0:
        raise ValueError("step must be positive")
    n = int(math.floor((b - a) / step + 1e-9))
    return a + step * np.arange(n + 1)


def grid_min_oracle(p: Problem | ScaledProblem, step: float) -> tuple[float, Scalar]:
    """Brute-force minimum over the uniform grid; ties go to the smallest x."""
    base = p.base if isinstance(p, ScaledProblem) else p
    xs = grid(base.a, base.b, step)
    fs = base.values(xs)
    if isinstance(p, Problem):
        i = int(np.argmin(fs))
        return float(xs[i]), float(fs[i])
    if p.ops is FLOAT:
        gs = p.alpha * fs + p.beta
        i = int(np.argmin(gs))
        return float(xs[i]), float(gs[i])
    gs = p.scale_values(fs.tolist())
    i = min(range(len(gs)), key=gs.__getitem__)
    return float(xs[i]), gs[i]


def lipschitz_overestimate(p: Problem, step: float, safety: float = 1.2) -> float:
    """``safety`` times the largest slope between neighbouring grid points."""
    if safety < 1:
        raise ValueError("safety must be >= 1")
    fs = p.values(grid(p.a, p.b, step))
    return safety * float(np.max(np.abs(np.diff(fs)))) / step


# -- expression grammar for custom problems -----------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}
_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
_CONSTS = {"pi": math.pi, "e": math.e}


def parse_expression(text: str) -> Callable:
    """Compile an arithmetic expression in ``x`` into a vectorized function.

    Supports ``+ - * / ^ **``, unary minus, numeric constants, ``pi``, ``e``
    and the functions ``sin cos exp sqrt abs``.
    """
    try:
        # '^' means power; rewrite so it gets the precedence of '**'
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad expression {text!r}: {exc.msg}") from None

    def build(node):
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            c = float(node.value)
            return lambda x: c
        if isinstance(node, ast.Name):
            if node.id == "x":
                return lambda x: x
            if node.id in _CONSTS:
                c = _CONSTS[node.id]
                return lambda x: c
            raise ValueError(f"unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            op = _BINOPS[type(node.op)]
            lhs, rhs = build(node.left), build(node.right)
            return lambda x: op(lhs(x), rhs(x))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            op = _UNARY[type(node.op)]
            arg = build(node.operand)
            return lambda x: op(arg(x))
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS
            and len(node.args) == 1
            and not node.keywords
        ):
            fn = _FUNCS[node.func.id]
            arg = build(node.args[0])
            return lambda x: fn(arg(x))
        raise ValueError(f"unsupported syntax {ast.dump(node)} in {text!r}")

    body = build(tree)

    def func(x):
        if isinstance(x, np.ndarray):
            return np.broadcast_to(body(x), x.shape).astype(float)
        return float(body(x))

    return func


def problem_from_expression(name: str, domain, expression: str, lipschitz: float | None = None) -> Problem:
    a, b = (float(v) for v in domain)
    return Problem(name, a, b, parse_expression(expression), lipschitz=lipschitz, expression=expression)


def load_problems(path: str | Path) -> dict[str, Problem]:
    """Read custom problems from a JSON file.

    Expected layout::

        {"problems": [{"name": "p1", "domain": [0, 1], "expression": "abs(x - 0.4)",
                       "lipschitz": 1.5}]}
    """
    data = json.loads(Path(path).read_text())
    out = {}
    for rec in data["problems"]:
        p = problem_from_expression(rec["name"], rec["domain"], rec["expression"], rec.get("lipschitz"))
        out[p.name] = p
    return out
