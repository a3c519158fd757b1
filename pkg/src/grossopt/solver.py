"""Divide-the-best scheme for univariate Lipschitz global optimization.

One engine covers eight methods: a geometric or information characteristic
combined with one of four Lipschitz estimators (a-priori, global adaptive,
maximum local tuning, maximum-additive local tuning).  All arithmetic on
objective values goes through Python operators, so the same code runs on
floats and on :class:`~grossopt.grossone.GrossNumber` values.

Interval ``j`` (0-based) is ``[x[j], x[j+1]]``; the per-interval lists ``H``,
``l`` and ``R`` have one entry per interval.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field, replace

from .grossone import GrossError
from .problems import Problem, ScaledProblem, as_scaled
from .scalar import Scalar, ScalarOps

__all__ = [
    "Characteristic",
    "Estimator",
    "StopReason",
    "MethodConfig",
    "METHOD_IDS",
    "MinorantViolationError",
    "SolverInvariantError",
    "RunReport",
    "Search",
    "divided_differences",
    "global_estimate",
    "mlt_estimate",
    "malt_estimate",
    "geometric_characteristic",
    "information_characteristic",
    "select_interval",
    "new_trial_point",
    "run",
]


class Characteristic(enum.Enum):
    GEOMETRIC = "geom"
    INFORMATION = "inf"


class Estimator(enum.Enum):
    APRIORI = "al"
    GLOBAL = "gl"
    MLT = "ltm"
    MALT = "ltma"


class StopReason(enum.Enum):
    ACCURACY = "accuracy"
    ITERATION_CAP = "iteration-cap"


METHOD_IDS = tuple(f"{c.value}-{e.value}" for c in Characteristic for e in Estimator)

DEFAULT_R = {Characteristic.GEOMETRIC: 1.1, Characteristic.INFORMATION: 1.5}


class MinorantViolationError(RuntimeError):
    """The Lipschitz estimate of the selected interval does not exceed its slope."""


class SolverInvariantError(RuntimeError):
    """An internal assumption of the scheme was broken (e.g. a non-finite step)."""


@dataclass(frozen=True)
class MethodConfig:
    """Method parameters.

    ``r`` defaults to 1.1 for geometric and 1.5 for information methods.
    ``lipschitz`` is the a-priori constant; when left ``None`` for an
    a-priori method, :func:`run` takes the problem's stored overestimate
    multiplied by the problem's ``alpha``.
    """

    characteristic: Characteristic
    estimator: Estimator
    r: float | None = None
    lipschitz: Scalar | None = None
    epsilon_fraction: float = 1e-4
    max_iterations: int = 10**6

    def __post_init__(self):
        if self.r is None:
            object.__setattr__(self, "r", DEFAULT_R[self.characteristic])
        if not self.r > 1:
            raise ValueError(f"reliability parameter r must exceed 1, got {self.r}")
        if not self.epsilon_fraction > 0:
            raise ValueError("epsilon_fraction must be positive")
        if self.max_iterations < 2:
            raise ValueError("max_iterations must allow the two initial trials")
        if self.lipschitz is not None and not self.lipschitz > 0:
            raise ValueError(f"a-priori Lipschitz constant must be positive, got {self.lipschitz}")

    @property
    def id(self) -> str:
        return f"{self.characteristic.value}-{self.estimator.value}"

    @classmethod
    def from_id(cls, method_id: str, **kwargs) -> "MethodConfig":
        if method_id.lower() not in METHOD_IDS:
            raise ValueError(f"unknown method {method_id!r}; known: {', '.join(METHOD_IDS)}")
        c, e = method_id.lower().split("-", 1)
        return cls(Characteristic(c), Estimator(e), **kwargs)

    def resolved_for(self, problem: ScaledProblem) -> "MethodConfig":
        if self.estimator is not Estimator.APRIORI or self.lipschitz is not None:
            return self
        if problem.base.lipschitz is None:
            raise ValueError(f"a-priori method needs a Lipschitz constant for {problem.name}")
        return replace(self, lipschitz=problem.alpha * problem.base.lipschitz)


# -- the formulas -------------------------------------------------------


def divided_differences(x: list[float], z: list) -> list:
    """Slopes ``|z[j+1] - z[j]| / (x[j+1] - x[j])`` for every interval."""
    out = []
    for j in range(len(x) - 1):
        dx = x[j + 1] - x[j]
        if not dx > 0:
            raise SolverInvariantError(f"abscissas not strictly increasing at {j}: {x[j]!r}, {x[j + 1]!r}")
        out.append(abs(z[j + 1] - z[j]) / dx)
    return out


def _max_slope(H: list):
    return max(H)


def _local_max(H: list, j: int):
    # neighbours j-1, j, j+1 clipped at both ends
    return max(H[max(j - 1, 0): j + 2])


def _mlt(H, j, hk, dx, xmax, r):
    lam = _local_max(H, j)
    gam = hk * (dx / xmax)
    return r * max(lam, gam)


def _malt(H, j, hk, dx, xmax, r):
    lam = _local_max(H, j)
    gam = hk * (dx / xmax)
    return r * max(H[j], (lam + gam) / 2)


def global_estimate(H: list, r: float, ops: ScalarOps) -> list:
    hk = _max_slope(H)
    value = r * hk if hk > 0 else ops.one
    return [value] * len(H)


def mlt_estimate(x: list[float], H: list, r: float, ops: ScalarOps) -> list:
    hk = _max_slope(H)
    if not hk > 0:
        return [ops.one] * len(H)
    dxs = [x[j + 1] - x[j] for j in range(len(H))]
    xmax = max(dxs)
    return [_mlt(H, j, hk, dxs[j], xmax, r) for j in range(len(H))]


def malt_estimate(x: list[float], H: list, r: float, ops: ScalarOps) -> list:
    hk = _max_slope(H)
    if not hk > 0:
        return [ops.one] * len(H)
    dxs = [x[j + 1] - x[j] for j in range(len(H))]
    xmax = max(dxs)
    return [_malt(H, j, hk, dxs[j], xmax, r) for j in range(len(H))]


def geometric_characteristic(x_left: float, x_right: float, z_left, z_right, l):
    """Minimum of the V-shaped minorant with slope ``l`` over the interval."""
    return (z_right + z_left) / 2 - l * (x_right - x_left) / 2


def information_characteristic(x_left: float, x_right: float, z_left, z_right, l):
    dx = x_right - x_left
    dz = z_right - z_left
    return 2 * (z_right + z_left) - l * dx - dz * dz / (l * dx)


def select_interval(R: list) -> int:
    """Position of the first minimal characteristic."""
    return min(range(len(R)), key=R.__getitem__)


def new_trial_point(x_left: float, x_right: float, z_left, z_right, l, H, ops: ScalarOps) -> float:
    if not l > H:
        raise MinorantViolationError(
            f"Lipschitz estimate {l} does not exceed the slope {H} on [{x_left!r}, {x_right!r}]"
        )
    try:
        shift = ops.to_real((z_right - z_left) / (2 * l))
    except GrossError as exc:
        raise SolverInvariantError(f"trial offset is not purely finite: {exc}") from exc
    return (x_right + x_left) / 2 - shift


# -- the search ---------------------------------------------------------


@dataclass
class RunReport:
    """Outcome of one run; ``trials`` is in evaluation order."""

    problem: str
    method: str
    config: MethodConfig
    alpha: Scalar
    beta: Scalar
    trials: list[tuple[float, Scalar]]
    selected: list[int]
    x_best: float
    z_best: Scalar
    stop_reason: StopReason
    traces: list[tuple[list, list]] | None = field(default=None, repr=False)
    elapsed: float = 0.0

    @property
    def trial_count(self) -> int:
        return len(self.trials)

    @property
    def xs(self) -> list[float]:
        return [x for x, _ in self.trials]

    @property
    def zs(self) -> list:
        return [z for _, z in self.trials]


class Search:
    """Step-by-step execution of the scheme on one (scaled) problem.

    After construction the two boundary trials are done and ``H``, ``l`` and
    ``R`` describe the current partition.  Each :meth:`step` selects an
    interval, checks the stopping rule and, if the search goes on, performs
    one new trial and refreshes the per-interval quantities.
    """

    def __init__(self, problem: Problem | ScaledProblem, config: MethodConfig, record_traces: bool = False):
        self.problem = as_scaled(problem)
        self.config = config.resolved_for(self.problem)
        self.ops = self.problem.ops
        self.eps = self.config.epsilon_fraction * (self.problem.b - self.problem.a)
        self.record_traces = record_traces
        self.traces: list[tuple[list, list]] | None = [] if record_traces else None
        self.selected: list[int] = []
        self.stop_reason: StopReason | None = None

        if self.config.estimator is Estimator.APRIORI:
            self._update_l = self._apriori
        elif self.config.estimator is Estimator.GLOBAL:
            self._update_l = self._global
        elif self.config.estimator is Estimator.MLT:
            self._update_l = self._mlt
        else:
            self._update_l = self._malt
        if self.config.characteristic is Characteristic.GEOMETRIC:
            self._char = geometric_characteristic
        else:
            self._char = information_characteristic

        a, b = self.problem.a, self.problem.b
        za, zb = self.problem(a), self.problem(b)
        self.trials: list[tuple[float, Scalar]] = [(a, za), (b, zb)]
        self.x: list[float] = [a, b]
        self.z: list = [za, zb]
        self.H = divided_differences(self.x, self.z)
        self.hk = _max_slope(self.H)
        self.xmax = b - a
        self.l: list = [None]
        self.R: list = [None]
        self._refresh(None)

    @property
    def k(self) -> int:
        return len(self.x)

    @property
    def done(self) -> bool:
        return self.stop_reason is not None

    def _dx(self, j: int) -> float:
        return self.x[j + 1] - self.x[j]

    # estimators: fill self.l for the given positions
    def _apriori(self, js):
        for j in js:
            self.l[j] = self.config.lipschitz

    def _global(self, js):
        value = self.config.r * self.hk if self.hk > 0 else self.ops.one
        for j in js:
            self.l[j] = value

    def _mlt(self, js):
        for j in js:
            self.l[j] = _mlt(self.H, j, self.hk, self._dx(j), self.xmax, self.config.r) if self.hk > 0 else self.ops.one

    def _malt(self, js):
        for j in js:
            self.l[j] = _malt(self.H, j, self.hk, self._dx(j), self.xmax, self.config.r) if self.hk > 0 else self.ops.one

    def _refresh(self, js) -> None:
        """Recompute ``l`` and ``R`` at positions ``js`` (all when ``None``)."""
        if js is None:
            js = range(len(self.H))
        self._update_l(js)
        x, z, l, R, char = self.x, self.z, self.l, self.R, self._char
        for j in js:
            R[j] = char(x[j], x[j + 1], z[j], z[j + 1], l[j])

    def _insert(self, t: int, xn: float, zn) -> None:
        # xn splits interval t into the new intervals t and t + 1
        self.x.insert(t + 1, xn)
        self.z.insert(t + 1, zn)
        x, z = self.x, self.z
        self.H[t] = abs(z[t + 1] - z[t]) / (x[t + 1] - x[t])
        self.H.insert(t + 1, abs(z[t + 2] - z[t + 1]) / (x[t + 2] - x[t + 1]))
        self.l.insert(t + 1, None)
        self.R.insert(t + 1, None)

        old_hk, old_xmax = self.hk, self.xmax
        self.hk = _max_slope(self.H)
        self.xmax = max(x[i + 1] - x[i] for i in range(len(x) - 1))
        est = self.config.estimator
        if est is Estimator.APRIORI:
            self._refresh((t, t + 1))
        elif est is Estimator.GLOBAL:
            self._refresh(None if self.hk != old_hk else (t, t + 1))
        elif self.hk != old_hk or self.xmax != old_xmax:
            self._refresh(None)
        else:
            self._refresh(range(max(t - 1, 0), min(t + 3, len(self.H))))

    def step(self) -> bool:
        """One iteration; returns False once the search has stopped."""
        if self.stop_reason is not None:
            return False
        if self.traces is not None:
            self.traces.append((list(self.l), list(self.R)))
        t = select_interval(self.R)
        self.selected.append(t)
        x, z = self.x, self.z
        if x[t + 1] - x[t] <= self.eps:
            self.stop_reason = StopReason.ACCURACY
            return False
        if self.k >= self.config.max_iterations:
            self.stop_reason = StopReason.ITERATION_CAP
            return False
        xn = new_trial_point(x[t], x[t + 1], z[t], z[t + 1], self.l[t], self.H[t], self.ops)
        if not x[t] < xn < x[t + 1]:
            # interval too small to hold a distinct machine number
            self.stop_reason = StopReason.ACCURACY
            return False
        zn = self.problem(xn)
        self.trials.append((xn, zn))
        self._insert(t, xn, zn)
        return True

    def best(self) -> tuple[float, Scalar]:
        i = min(range(len(self.z)), key=self.z.__getitem__)
        return self.x[i], self.z[i]

    def report(self, elapsed: float = 0.0) -> RunReport:
        xb, zb = self.best()
        return RunReport(
            problem=self.problem.name,
            method=self.config.id,
            config=self.config,
            alpha=self.problem.alpha,
            beta=self.problem.beta,
            trials=list(self.trials),
            selected=list(self.selected),
            x_best=xb,
            z_best=zb,
            stop_reason=self.stop_reason,
            traces=self.traces,
            elapsed=elapsed,
        )


def run(problem: Problem | ScaledProblem, config: MethodConfig, record_traces: bool = False) -> RunReport:
    """Run the scheme until the accuracy or iteration-cap stop."""
    start = time.perf_counter()
    search = Search(problem, config, record_traces=record_traces)
    while search.step():
        pass
    return search.report(time.perf_counter() - start)
